"""Paillier cryptosystem and its component-wise use on Gaussian integers.

Signed plaintexts are stored mod n with a centered lift, so any value with
``|x| < n/2`` survives encryption, homomorphic addition and decryption as
long as the running sum stays inside that window.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .counters import OpCounter
from .errors import DomainError, MalformedCiphertextError, RangeError
from .gaussian import GaussianInt
from .numtheory import is_probable_prime, random_prime


@dataclass(frozen=True)
class PaillierPublicKey:
    n: int
    g: int

    @property
    def n_sq(self):
        return self.n * self.n

    def to_json(self):
        return {"n": str(self.n), "g": str(self.g)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["n"]), int(obj["g"]))


@dataclass(frozen=True)
class PaillierPrivateKey:
    L_P: int
    M_P: int

    def to_json(self):
        return {"L_P": str(self.L_P), "M_P": str(self.M_P)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["L_P"]), int(obj["M_P"]))


@dataclass(frozen=True)
class GPaillierCiphertext:
    cR: int
    cI: int

    def to_json(self):
        return {"cR": str(self.cR), "cI": str(self.cI)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["cR"]), int(obj["cI"]))


def _L(x, n):
    if (x - 1) % n:
        raise MalformedCiphertextError("L(x) is not an integer")
    return (x - 1) // n


def keygen(bits=None, p=None, q=None, rng=None, g=None):
    """Generate keys from explicit primes ``p, q`` or from a modulus size in bits."""
    if p is None or q is None:
        if bits is None or bits < 8:
            raise DomainError("give either both primes or a modulus size of at least 8 bits")
        while True:
            p = random_prime(bits // 2, rng)
            q = random_prime(bits - bits // 2, rng)
            if p != q and math.gcd(p * q, (p - 1) * (q - 1)) == 1:
                break
    if p == q:
        raise DomainError("p and q must differ")
    if not (is_probable_prime(p) and is_probable_prime(q)):
        raise DomainError("p and q must be prime")
    n = p * q
    if math.gcd(n, (p - 1) * (q - 1)) != 1:
        raise DomainError("gcd(pq, (p-1)(q-1)) != 1")
    g = n + 1 if g is None else g
    n_sq = n * n
    lam = math.lcm(p - 1, q - 1)
    try:
        mu = pow(_L(pow(g, lam, n_sq), n), -1, n)
    except (ValueError, MalformedCiphertextError) as exc:
        raise DomainError(f"g={g} is not a valid Paillier base") from exc
    return PaillierPublicKey(n, g), PaillierPrivateKey(lam, mu)


def random_r(pub, rng):
    while True:
        r = rng.randrange(1, pub.n)
        if math.gcd(r, pub.n) == 1:
            return r


def enc_int(m, r, pub, counter: OpCounter | None = None):
    """``g^m * r^n mod n^2``; two modexps mod n^2."""
    n, n_sq = pub.n, pub.n_sq
    if not 0 <= m < n:
        raise RangeError(f"plaintext {m} outside [0, n)")
    if not 0 < r < n or math.gcd(r, n) != 1:
        raise DomainError("randomizer must be a unit in (0, n)")
    if counter is not None:
        counter.modexp_n2 += 2
    return pow(pub.g, m, n_sq) * pow(r, n, n_sq) % n_sq


def dec_int(c, priv, pub, counter: OpCounter | None = None):
    n, n_sq = pub.n, pub.n_sq
    if not 0 < c < n_sq or math.gcd(c, n) != 1:
        raise MalformedCiphertextError("ciphertext is not a unit mod n^2")
    if counter is not None:
        counter.modexp_n2 += 1
    return _L(pow(c, priv.L_P, n_sq), n) * priv.M_P % n


def hom_add(c1, c2, pub):
    return c1 * c2 % pub.n_sq


def hom_scale(c, k, pub, counter: OpCounter | None = None):
    if k < 0:
        raise DomainError("scalar must be nonnegative")
    if counter is not None:
        counter.modexp_n2 += 1
    return pow(c, k, pub.n_sq)


def encode_signed(x, pub):
    n = pub.n
    if 2 * abs(x) >= n:
        raise RangeError(f"|{x}| does not fit below n/2")
    return x % n


def decode_signed(m, pub):
    n = pub.n
    if not 0 <= m < n:
        raise RangeError(f"{m} outside [0, n)")
    return m - n if 2 * m > n else m


def enc_gauss(mu, pub, rng, counter: OpCounter | None = None):
    """Encrypt real and imaginary parts separately (four modexps mod n^2)."""
    mu = GaussianInt.of(mu)
    mR, mI = encode_signed(mu.re, pub), encode_signed(mu.im, pub)
    return GPaillierCiphertext(
        enc_int(mR, random_r(pub, rng), pub, counter),
        enc_int(mI, random_r(pub, rng), pub, counter),
    )


def dec_gauss(ct, priv, pub, counter: OpCounter | None = None):
    return GaussianInt(
        decode_signed(dec_int(ct.cR, priv, pub, counter), pub),
        decode_signed(dec_int(ct.cI, priv, pub, counter), pub),
    )


def hom_add_gauss(c1, c2, pub):
    return GPaillierCiphertext(hom_add(c1.cR, c2.cR, pub), hom_add(c1.cI, c2.cI, pub))


def save_keys(pub, priv, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "paillier_public.json").write_text(json.dumps(pub.to_json(), indent=2) + "\n")
    (directory / "paillier_private.json").write_text(json.dumps(priv.to_json(), indent=2) + "\n")


def load_keys(directory):
    directory = Path(directory)
    pub = PaillierPublicKey.from_json(json.loads((directory / "paillier_public.json").read_text()))
    priv = PaillierPrivateKey.from_json(json.loads((directory / "paillier_private.json").read_text()))
    return pub, priv
