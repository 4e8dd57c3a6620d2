"""Channel adversaries: replay, ciphertext tampering, false data injection, masquerade.

Each adversary sees every message through ``intercept`` and may return a
rewritten copy. None of them hold private keys, symmetric keys or the
watermark schedule; they only know the public keys.
"""

import copy

from .. import elgamal, paillier
from ..gaussian import GaussianInt
from .eg import sample_lambda

SCENARIOS = ("none", "replay", "tamper", "false_injection", "masquerade")


class Adversary:
    def intercept(self, msg):
        return msg


class ReplayAdversary(Adversary):
    """Records ``kind`` messages of round ``source`` and replays one at round ``at``."""

    def __init__(self, kind, source, at):
        self.kind, self.source, self.at = kind, source, at
        self.recorded = None

    def intercept(self, msg):
        if msg.kind != self.kind:
            return msg
        if msg.round == self.source and self.recorded is None:
            self.recorded = copy.deepcopy(msg.payload)
        elif msg.round == self.at and self.recorded is not None:
            msg = copy.copy(msg)
            msg.payload = copy.deepcopy(self.recorded)
        return msg


class TamperAdversary(Adversary):
    """Adds a random nonzero offset to one ciphertext component.

    ``target`` is ``"<kind>.<component>"``, for example ``"data.psi2.re"``
    (EG), ``"aggregate.cI"``, ``"partial.cR"`` or ``"challenge.blob"`` (AggP).
    For ``"key.chunks"`` the first setup message is corrupted.
    """

    def __init__(self, target, modulus, rng, at=None):
        self.kind, _, self.path = target.partition(".")
        self.modulus = modulus
        self.rng = rng
        self.at = at
        self.done = False

    def intercept(self, msg):
        if self.done or msg.kind != self.kind or (self.at is not None and msg.round != self.at):
            return msg
        self.done = True
        msg = copy.copy(msg)
        msg.payload = payload = copy.deepcopy(msg.payload)
        keys = self.path.split(".")
        holder = payload
        for key in keys[:-1]:
            holder = holder[key]
        last = keys[-1]
        if last == "blob":
            raw = bytearray(bytes.fromhex(holder[last]))
            pos = self.rng.randrange(len(raw))
            raw[pos] ^= self.rng.randrange(1, 256)
            holder[last] = raw.hex()
        elif last == "chunks":
            holder[last] = [str((int(c) + self.rng.randrange(1, self.modulus)) % self.modulus)
                            for c in holder[last][:1]] + holder[last][1:]
        else:
            value = int(holder[last])
            holder[last] = str((value + self.rng.randrange(1, self.modulus)) % self.modulus)
        return msg


class EGForgeryAdversary(Adversary):
    """Replaces the sensor's reply with ``challenge * Enc(d + i*w)`` for a forged pair.

    With ``guess_watermark`` the forged watermark is a uniform B-bit guess
    (false data injection); otherwise it is 0 (masquerading without a watermark).
    """

    def __init__(self, pub, rng, B, data_bound, at=None, guess_watermark=True):
        self.pub, self.rng, self.B = pub, rng, B
        self.data_bound = data_bound
        self.at = at
        self.guess = guess_watermark
        self.challenge = None

    def intercept(self, msg):
        if self.at is not None and msg.round != self.at:
            return msg
        if msg.kind == "challenge":
            self.challenge = elgamal.EGCiphertext.from_json(msg.payload)
        elif msg.kind == "data" and self.challenge is not None:
            w = self.rng.getrandbits(self.B) if self.guess else 0
            d = self.rng.randint(-self.data_bound, self.data_bound)
            fake = GaussianInt(d, w) or GaussianInt(1, w)
            forged = elgamal.ct_mul(self.challenge, elgamal.encrypt(fake, self.pub, rng=self.rng),
                                    self.pub.ring)
            msg = copy.copy(msg)
            msg.payload = forged.to_json()
        return msg


class AggPForgeryAdversary(Adversary):
    """Replaces the final aggregate with an encryption of a forged value.

    Lacking λ_k, the forger picks its own nonzero factor and a watermark guess
    (false injection), or sends an unscaled reading with no watermark
    (masquerade).
    """

    def __init__(self, pub, rng, B, n_sensors, data_bound, at=None, guess_watermark=True):
        self.pub, self.rng, self.B = pub, rng, B
        self.n_sensors = n_sensors
        self.data_bound = data_bound
        self.at = at
        self.guess = guess_watermark

    def intercept(self, msg):
        if msg.kind != "aggregate" or (self.at is not None and msg.round != self.at):
            return msg
        s = self.rng.randint(-self.n_sensors * self.data_bound, self.n_sensors * self.data_bound)
        if self.guess:
            w = self.rng.getrandbits(self.B)
            span = self.n_sensors * (self.data_bound + (1 << self.B))
            limit = max(1, min((self.pub.n - 1) // (2 * span), 1 << 32))
            fake = sample_lambda(self.rng, limit) * GaussianInt(s, self.n_sensors * w)
        else:
            fake = GaussianInt(s, 0)
        msg = copy.copy(msg)
        msg.payload = paillier.enc_gauss(fake, self.pub, self.rng).to_json()
        return msg


def make_adversary(attack_cfg, protocol, pub, rng, B, data_bound, n_sensors=1):
    """Build an adversary from a scenario ``attack`` entry (string or dict)."""
    if attack_cfg in (None, "none"):
        return None
    if isinstance(attack_cfg, str):
        attack_cfg = {"type": attack_cfg}
    kind = attack_cfg["type"]
    if kind == "none":
        return None
    at = attack_cfg.get("at")
    if kind == "replay":
        what = "data" if protocol == "eg" else "aggregate"
        return ReplayAdversary(attack_cfg.get("kind", what), attack_cfg.get("from", 1), attack_cfg.get("at", 2))
    if kind in ("tamper", "tamper_ciphertext"):
        if protocol == "eg":
            target = attack_cfg.get("target", "data.psi2.re")
            modulus = pub.p
        else:
            target = attack_cfg.get("target", "aggregate.cR")
            modulus = pub.n_sq
        return TamperAdversary(target, modulus, rng, at)
    if kind in ("false_injection", "masquerade", "masquerade_no_watermark"):
        guess = kind == "false_injection"
        if protocol == "eg":
            return EGForgeryAdversary(pub, rng, B, data_bound, at, guess)
        return AggPForgeryAdversary(pub, rng, B, n_sensors, data_bound, at, guess)
    raise ValueError(f"unknown attack {kind!r}")
