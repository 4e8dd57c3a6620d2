"""Authenticated symmetric channel DC -> sensor and key transport over Paillier."""

import hashlib
import hmac
import json

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from ..errors import AuthenticationError, DomainError
from ..gaussian import GaussianInt

KEY_BYTES = 16


def _nonce(k):
    return k.to_bytes(12, "big")


class AesGcmCipher:
    name = "aes-gcm"

    def encrypt(self, key, nonce, plaintext):
        return AESGCM(key).encrypt(_nonce(nonce), plaintext, None)

    def decrypt(self, key, nonce, blob):
        try:
            return AESGCM(key).decrypt(_nonce(nonce), blob, None)
        except InvalidTag as exc:
            raise AuthenticationError("AES-GCM tag check failed") from exc


class HmacStreamCipher:
    """Stdlib-only encrypt-then-MAC test cipher (SHA-256 keystream, HMAC tag)."""

    name = "hmac-stream"
    TAG = 16

    def _stream(self, key, nonce, size):
        out = bytearray()
        block = 0
        while len(out) < size:
            out += hashlib.sha256(key + _nonce(nonce) + block.to_bytes(4, "big")).digest()
            block += 1
        return bytes(out[:size])

    def _tag(self, key, nonce, body):
        return hmac.new(key, b"tag" + _nonce(nonce) + body, hashlib.sha256).digest()[: self.TAG]

    def encrypt(self, key, nonce, plaintext):
        body = bytes(a ^ b for a, b in zip(plaintext, self._stream(key, nonce, len(plaintext))))
        return body + self._tag(key, nonce, body)

    def decrypt(self, key, nonce, blob):
        body, tag = blob[: -self.TAG], blob[-self.TAG :]
        if len(blob) < self.TAG or not hmac.compare_digest(tag, self._tag(key, nonce, body)):
            raise AuthenticationError("HMAC tag check failed")
        return bytes(a ^ b for a, b in zip(body, self._stream(key, nonce, len(body))))


CIPHERS = {c.name: c for c in (AesGcmCipher, HmacStreamCipher)}


def make_cipher(name):
    try:
        return CIPHERS[name]()
    except KeyError:
        raise DomainError(f"unknown cipher {name!r}; choose from {sorted(CIPHERS)}") from None


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


class SymmetricChannel:
    """One sensor's channel; the round index is the nonce."""

    def __init__(self, sensor_id, key, cipher):
        if len(key) != KEY_BYTES:
            raise DomainError(f"symmetric key must be {KEY_BYTES} bytes")
        self.sensor_id = sensor_id
        self.key = key
        self.cipher = cipher

    def seal(self, k, lam):
        return self.cipher.encrypt(self.key, k, canonical_json(lam.to_json()))

    def open(self, k, blob):
        plain = self.cipher.decrypt(self.key, k, blob)
        try:
            return GaussianInt.from_json(json.loads(plain))
        except (ValueError, KeyError, TypeError) as exc:
            raise AuthenticationError("channel payload is not a Gaussian integer") from exc


def chunk_bits(n):
    bits = n.bit_length() - 1
    if bits < 1:
        raise DomainError("Paillier modulus too small to carry key chunks")
    return bits


def key_to_chunks(key, n):
    """Split key bytes into integers below 2^c <= n, least significant first."""
    c = chunk_bits(n)
    value, total = int.from_bytes(key, "big"), 8 * len(key)
    return [(value >> shift) & ((1 << c) - 1) for shift in range(0, total, c)]


def chunks_to_key(chunks, n, size=KEY_BYTES):
    c = chunk_bits(n)
    mask = (1 << c) - 1
    value = 0
    for i, chunk in enumerate(chunks):
        value |= (chunk & mask) << (i * c)
    return (value % (1 << (8 * size))).to_bytes(size, "big")
