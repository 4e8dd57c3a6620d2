"""Exact Gaussian-integer arithmetic and modular arithmetic over Z[i]/pZ[i].

Residues mod p use the box [0, p) x [0, p) as canonical representatives, so
reduction is just integer ``%`` on each component. ``centered_lift`` maps a
residue to the box (-p/2, p/2) when a signed value has to be recovered.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .counters import OpCounter
from .errors import DomainError, NotInvertibleError
from .numtheory import is_probable_prime


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __post_init__(self):
        if not (isinstance(self.re, int) and isinstance(self.im, int)):
            raise TypeError("GaussianInt components must be int")

    @classmethod
    def of(cls, value):
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise DomainError(f"{value} is not a Gaussian integer")
            return cls(int(value.real), int(value.imag))
        if isinstance(value, str):
            return parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianInt")

    def __add__(self, other):
        other = GaussianInt.of(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianInt.of(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianInt.of(other) - self

    def __mul__(self, other):
        other = GaussianInt.of(other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self):
        return GaussianInt(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def to_json(self):
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["re"]), int(obj["im"]))

    def __str__(self):
        if self.im < 0:
            return f"{self.re}-{-self.im}i"
        return f"{self.re}+{self.im}i"

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)

_LITERAL = re.compile(
    r"^\s*(?P<re>[+-]?\s*\d+)?\s*(?:(?P<sign>[+-])\s*(?P<im>\d*)\s*[ij])?\s*$"
)
_PURE_IMAG = re.compile(r"^\s*(?P<sign>[+-]?)\s*(?P<im>\d*)\s*[ij]\s*$")


def parse(text):
    """Parse a literal such as ``"3+2i"``, ``"7 - 22i"``, ``"-5"`` or ``"2i"``."""
    m = _PURE_IMAG.match(text)
    if m:
        mag = int(m["im"]) if m["im"] else 1
        return GaussianInt(0, -mag if m["sign"] == "-" else mag)
    m = _LITERAL.match(text)
    if not m or (m["re"] is None and m["sign"] is None):
        raise DomainError(f"not a Gaussian integer literal: {text!r}")
    real = int(m["re"].replace(" ", "")) if m["re"] else 0
    imag = 0
    if m["sign"]:
        if m["re"] is None:
            raise DomainError(f"not a Gaussian integer literal: {text!r}")
        mag = int(m["im"]) if m["im"] else 1
        imag = -mag if m["sign"] == "-" else mag
    return GaussianInt(real, imag)


def norm(z):
    return z.norm()


def mul(x, y):
    return GaussianInt.of(x) * GaussianInt.of(y)


def inv_exact(lam):
    """Exact inverse in Q[i] as a pair of reduced Fractions (real, imaginary)."""
    lam = GaussianInt.of(lam)
    n = lam.norm()
    if n == 0:
        raise DomainError("zero has no inverse")
    return Fraction(lam.re, n), Fraction(-lam.im, n)


def _round_div(num, den):
    """Nearest integer to num/den (den > 0); exact halves go toward zero."""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den:
        return q + 1
    if twice == den and q < 0:
        return q + 1
    return q


def div_rem(alpha, beta):
    """Gaussian division ``alpha = kappa*beta + rho`` with N(rho) < N(beta)."""
    alpha, beta = GaussianInt.of(alpha), GaussianInt.of(beta)
    n = beta.norm()
    if n == 0:
        raise DomainError("division by zero Gaussian integer")
    num = alpha * beta.conj()
    kappa = GaussianInt(_round_div(num.re, n), _round_div(num.im, n))
    return kappa, alpha - kappa * beta


def exact_div(alpha, beta):
    """``alpha / beta`` when it is a Gaussian integer, else None."""
    alpha, beta = GaussianInt.of(alpha), GaussianInt.of(beta)
    n = beta.norm()
    if n == 0:
        raise DomainError("division by zero Gaussian integer")
    num = alpha * beta.conj()
    if num.re % n or num.im % n:
        return None
    return GaussianInt(num.re // n, num.im // n)


@lru_cache(maxsize=256)
def is_suitable_prime(p):
    """True iff p is a rational prime that stays prime in Z[i] (p ≡ 3 mod 4)."""
    return p % 4 == 3 and is_probable_prime(p)


@dataclass(frozen=True)
class GModRing:
    """Z[i] modulo a rational prime p ≡ 3 (mod 4); a field with p^2 elements."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not is_suitable_prime(self.p):
            raise DomainError(f"{self.p} is not a prime congruent to 3 mod 4")

    @property
    def order(self):
        return (self.p - 1) * (self.p + 1)

    def elements(self):
        """All p^2 canonical representatives (only sensible for tiny p)."""
        return [GaussianInt(a, b) for a in range(self.p) for b in range(self.p)]


def group_order(ring):
    return ring.order


def mod_reduce(z, ring):
    z = GaussianInt.of(z)
    return GaussianInt(z.re % ring.p, z.im % ring.p)


def centered_lift(z, ring):
    p = ring.p
    if not (0 <= z.re < p and 0 <= z.im < p):
        raise DomainError(f"{z} is not a canonical representative mod {p}")
    half = p // 2
    return GaussianInt(z.re - p if z.re > half else z.re, z.im - p if z.im > half else z.im)


def mod_mul(x, y, ring):
    x, y = GaussianInt.of(x), GaussianInt.of(y)
    p = ring.p
    return GaussianInt(
        (x.re * y.re - x.im * y.im) % p,
        (x.re * y.im + x.im * y.re) % p,
    )


def mod_pow(x, e, ring, counter: OpCounter | None = None):
    """Square-and-multiply exponentiation; counts one complex modexp."""
    if e < 0:
        raise DomainError("negative exponent; invert first")
    if counter is not None:
        counter.complex_modexp += 1
    p = ring.p
    x = GaussianInt.of(x)
    br, bi = x.re % p, x.im % p
    rr, ri = 1, 0
    while e:
        if e & 1:
            rr, ri = (rr * br - ri * bi) % p, (rr * bi + ri * br) % p
        e >>= 1
        if e:
            br, bi = (br * br - bi * bi) % p, (2 * br * bi) % p
    return GaussianInt(rr, ri)


def mod_inv(z, ring, counter: OpCounter | None = None):
    """conj(z) * N(z)^-1 mod p.

    The norm inverse uses the extended-gcd ``pow(n, -1, p)`` but is booked
    as one integer modular exponentiation.
    """
    z = mod_reduce(z, ring)
    n = z.norm() % ring.p
    if n == 0:
        raise NotInvertibleError(f"{z} is not invertible mod {ring.p}")
    if counter is not None:
        counter.int_modexp += 1
    n_inv = pow(n, -1, ring.p)
    return mod_reduce(z.conj() * n_inv, ring)


def is_generator(gamma, ring, factors):
    """True iff gamma has multiplicative order exactly p^2-1.

    ``factors`` must be the distinct prime factors of p^2-1.
    """
    gamma = mod_reduce(gamma, ring)
    if not gamma:
        return False
    order = ring.order
    if mod_pow(gamma, order, ring) != ONE:
        return False
    return all(mod_pow(gamma, order // q, ring) != ONE for q in factors)


def find_generator(ring, factors, rng, max_attempts=10_000):
    p = ring.p
    for _ in range(max_attempts):
        candidate = GaussianInt(rng.randrange(p), rng.randrange(p))
        if is_generator(candidate, ring, factors):
            return candidate
    raise DomainError(f"no generator found mod {p} after {max_attempts} attempts")
