"""Reversible data hiding in the complex domain.

Data ``d`` and watermark ``w`` form ``d + iw``, which is multiplied by a
secret Gaussian integer key. Extraction divides the key back out with exact
integer arithmetic; a nonzero remainder is reported as an IntegrityError.
"""

from dataclasses import dataclass

from .errors import AmbiguityError, DomainError, IntegrityError
from .gaussian import GaussianInt, exact_div
from .numtheory import small_primes


@dataclass(frozen=True)
class WatermarkKey:
    lam: GaussianInt

    def __post_init__(self):
        lam = GaussianInt.of(self.lam)
        object.__setattr__(self, "lam", lam)
        if lam.re == 0 or lam.im == 0:
            raise DomainError(f"watermark key {lam} needs nonzero real and imaginary parts")


def _key(key):
    return key if isinstance(key, WatermarkKey) else WatermarkKey(GaussianInt.of(key))


def embed(d, w, key):
    """Watermarked value ``lambda * (d + iw)``."""
    return _key(key).lam * GaussianInt(d, w)


def _unscale(value, key):
    out = exact_div(GaussianInt.of(value), _key(key).lam)
    if out is None:
        raise IntegrityError(f"{value} is not a multiple of the watermark key")
    return out


def extract(value, key):
    """Recover ``(d, w)`` from a watermarked value."""
    delta = _unscale(value, key)
    return delta.re, delta.im


def aggregate(values):
    values = list(values)
    if not values:
        raise DomainError("cannot aggregate an empty list")
    total = GaussianInt(0, 0)
    for v in values:
        total = total + v
    return total


def extract_aggregate(sigma, key, n):
    """Recover ``(S, w)`` from the sum of ``n`` values watermarked with the same key."""
    if n < 1:
        raise DomainError("number of aggregated values must be positive")
    delta = _unscale(sigma, key)
    if delta.im % n:
        raise IntegrityError(f"imaginary part {delta.im} is not divisible by N={n}")
    return delta.re, delta.im // n


def recover_N_and_w(imag_part, n_max=100):
    """Split ``N*w`` into ``(N, w)`` when w has no prime factor below ``n_max``.

    N collects every prime power dividing ``imag_part`` with prime < n_max.
    """
    if imag_part < 1:
        raise DomainError("imaginary part must be a positive integer")
    n, rest = 1, imag_part
    for q in small_primes():
        if q >= n_max:
            break
        while rest % q == 0:
            rest //= q
            n *= q
    if n > n_max:
        raise AmbiguityError(f"recovered N={n} exceeds n_max={n_max}")
    return n, rest


@dataclass(frozen=True)
class EmbedMatrix:
    """Integer 2x2 embedding matrix, the vector form of the complex key."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.det == 0:
            raise DomainError("embedding matrix must be invertible")

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def mixing(self):
        return 0 not in (self.m11, self.m12, self.m21, self.m22)

    @classmethod
    def from_key(cls, lam):
        lam = GaussianInt.of(lam)
        return cls(lam.re, -lam.im, lam.im, lam.re)


def matrix_embed(d, w, m):
    return m.m11 * d + m.m12 * w, m.m21 * d + m.m22 * w


def matrix_extract(v1, v2, m):
    det = m.det
    d_num = m.m22 * v1 - m.m12 * v2
    w_num = -m.m21 * v1 + m.m11 * v2
    if d_num % det or w_num % det:
        raise IntegrityError(f"({v1}, {v2}) is not in the image lattice of the matrix")
    return d_num // det, w_num // det
