"""ElGamal encryption over the multiplicative group of Z[i]/pZ[i]."""

import json
from dataclasses import dataclass
from pathlib import Path

from .counters import OpCounter
from .errors import DomainError, MalformedCiphertextError
from .gaussian import (
    GaussianInt,
    GModRing,
    is_generator,
    mod_inv,
    mod_mul,
    mod_pow,
    mod_reduce,
)
from .numtheory import is_probable_prime, unit_group_factors


@dataclass(frozen=True)
class EGPublicKey:
    p: int
    gamma: GaussianInt
    K: GaussianInt
    order_factors: tuple = ()

    @property
    def ring(self):
        return GModRing(self.p)

    def to_json(self):
        return {
            "p": str(self.p),
            "gamma": self.gamma.to_json(),
            "K": self.K.to_json(),
            "order_factors": [str(q) for q in self.order_factors],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            int(obj["p"]),
            GaussianInt.from_json(obj["gamma"]),
            GaussianInt.from_json(obj["K"]),
            tuple(int(q) for q in obj.get("order_factors", ())),
        )


@dataclass(frozen=True)
class EGPrivateKey:
    a: int

    def to_json(self):
        return {"a": str(self.a)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["a"]))


@dataclass(frozen=True)
class EGCiphertext:
    psi1: GaussianInt
    psi2: GaussianInt

    def to_json(self):
        return {"psi1": self.psi1.to_json(), "psi2": self.psi2.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussianInt.from_json(obj["psi1"]), GaussianInt.from_json(obj["psi2"]))


def check_factorization(order, factors):
    """Raise unless ``factors`` are exactly the distinct primes of ``order``."""
    rest = order
    for q in factors:
        if q < 2 or rest % q or not is_probable_prime(q):
            raise DomainError(f"{q} is not a prime factor of {order}")
        while rest % q == 0:
            rest //= q
    if rest != 1:
        raise DomainError(f"factorization of {order} is incomplete (cofactor {rest})")


def keygen(ring, gamma, rng=None, factors=None, a=None):
    """Return ``(public, private)``; the generator is verified first.

    ``factors`` are the distinct primes of p^2-1; they are computed when
    omitted, which only works for desk-scale p. ``a`` may be fixed for
    reproducing known vectors, otherwise it is drawn from ``rng``.
    """
    order = ring.order
    if factors is None:
        factors = unit_group_factors(ring.p)
    factors = tuple(sorted(factors))
    check_factorization(order, factors)
    gamma = mod_reduce(gamma, ring)
    if not is_generator(gamma, ring, factors):
        raise DomainError(f"{gamma} does not generate Z[i]*_{ring.p}")
    if a is None:
        a = rng.randrange(1, order)
    if not 1 <= a <= order - 1:
        raise DomainError(f"private exponent must lie in [1, {order - 1}]")
    K = mod_pow(gamma, a, ring)
    return EGPublicKey(ring.p, gamma, K, factors), EGPrivateKey(a)


def largest_factor_bits(pub):
    return max(pub.order_factors).bit_length() if pub.order_factors else None


def encrypt(mu, pub, b=None, rng=None, counter: OpCounter | None = None):
    """``(gamma^b, mu * K^b)``; exactly two complex modexps."""
    ring = pub.ring
    mu = mod_reduce(mu, ring)
    if not mu:
        raise DomainError("plaintext is 0 mod p, not in the multiplicative group")
    order = ring.order
    if b is None:
        b = rng.randrange(1, order)
    if not 1 <= b <= order - 1:
        raise DomainError(f"ephemeral exponent must lie in [1, {order - 1}]")
    psi1 = mod_pow(pub.gamma, b, ring, counter)
    psi2 = mod_mul(mu, mod_pow(pub.K, b, ring, counter), ring)
    return EGCiphertext(psi1, psi2)


def decrypt(ct, priv, ring, counter: OpCounter | None = None):
    """``psi2 * (psi1^a)^-1``; one complex modexp and one integer modexp."""
    psi1 = mod_reduce(ct.psi1, ring)
    if not psi1:
        raise MalformedCiphertextError("first ciphertext component is 0 mod p")
    tau = mod_pow(psi1, priv.a, ring, counter)
    return mod_mul(ct.psi2, mod_inv(tau, ring, counter), ring)


def ct_mul(c1, c2, ring):
    return EGCiphertext(mod_mul(c1.psi1, c2.psi1, ring), mod_mul(c1.psi2, c2.psi2, ring))


def validate_keypair(pub, priv):
    """Recompute K and re-check the generator against the stored factorization."""
    ring = pub.ring
    check_factorization(ring.order, pub.order_factors)
    if not is_generator(pub.gamma, ring, pub.order_factors):
        raise DomainError("stored gamma is not a generator")
    if mod_pow(pub.gamma, priv.a, ring) != pub.K:
        raise DomainError("public K does not match gamma^a")


def save_keys(pub, priv, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "eg_public.json").write_text(json.dumps(pub.to_json(), indent=2) + "\n")
    (directory / "eg_private.json").write_text(json.dumps(priv.to_json(), indent=2) + "\n")


def load_keys(directory):
    directory = Path(directory)
    pub = EGPublicKey.from_json(json.loads((directory / "eg_public.json").read_text()))
    priv = EGPrivateKey.from_json(json.loads((directory / "eg_private.json").read_text()))
    validate_keypair(pub, priv)
    return pub, priv
