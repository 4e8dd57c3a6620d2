"""Integer number theory helpers: primality, prime generation, factorization."""

import math
import random
from collections import Counter
from functools import lru_cache

from .errors import DomainError, FactorizationError

TRIAL_LIMIT = 1 << 16
MR_ROUNDS = 64
_MR_SEED = 0x4D52


@lru_cache(maxsize=None)
def small_primes(limit=TRIAL_LIMIT):
    """All primes strictly below ``limit`` (sieve of Eratosthenes)."""
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n, rounds=MR_ROUNDS):
    """Trial division below 2^16, then Miller-Rabin with seeded witnesses.

    The witness RNG is seeded from ``n`` so the answer is reproducible.
    """
    if n < 2:
        return False
    for q in small_primes():
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < TRIAL_LIMIT * TRIAL_LIMIT:
        return True

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(_MR_SEED ^ n)
    for _ in range(rounds):
        x = pow(rng.randrange(2, n - 1), d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits, rng, residue=None, modulus=None):
    """Random prime with exactly ``bits`` bits, optionally ``≡ residue (mod modulus)``."""
    if bits < 2:
        raise DomainError("need at least 2 bits")
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if residue is not None and n % modulus != residue:
            n += (residue - n) % modulus
            if n.bit_length() != bits:
                continue
        if is_probable_prime(n):
            return n


def pollard_brent(n, rng, max_iterations=1 << 20):
    """Return a nontrivial factor of composite ``n`` or None if the budget runs out."""
    if n % 2 == 0:
        return 2
    iterations = 0
    while iterations < max_iterations:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and iterations < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            iterations += r
            r *= 2
        if g == n:
            # batched gcd overshot; retrace one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n, rng=None, max_iterations=1 << 20):
    """Full prime factorization of ``n >= 1`` as a Counter {prime: exponent}.

    Raises FactorizationError when Pollard rho exhausts its budget on some
    composite cofactor.
    """
    if n < 1:
        raise DomainError("factorize needs a positive integer")
    rng = rng or random.Random(n)
    found = Counter()
    for q in small_primes():
        if q * q > n:
            break
        while n % q == 0:
            found[q] += 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            found[m] += 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        f = pollard_brent(m, rng, max_iterations)
        if f is None:
            raise FactorizationError(f"could not split {m} within budget")
        stack += [f, m // f]
    return found


def prime_factors(n, **kw):
    return sorted(factorize(n, **kw))


def unit_group_factors(p, **kw):
    """Distinct primes of p^2-1, found by factoring p-1 and p+1 separately."""
    return sorted(set(factorize(p - 1, **kw)) | set(factorize(p + 1, **kw)))


def eg_parameters(bits, rng, max_candidates=100_000, rho_budget=1 << 12):
    """Search a prime p ≡ 3 (mod 4) of ``bits`` bits whose p^2-1 factors cheaply.

    Candidates are kept only when p-1 and p+1 each split completely under a
    small Pollard rho budget, so this works for any size at which such
    "lucky" primes are common enough. Returns ``(p, factors)`` with factors
    the sorted distinct primes of p^2-1.
    """
    for _ in range(max_candidates):
        p = random_prime(bits, rng, 3, 4)
        try:
            fm = factorize(p - 1, rng, rho_budget)
            fp = factorize(p + 1, rng, rho_budget)
        except FactorizationError:
            continue
        return p, sorted(set(fm) | set(fp))
    raise FactorizationError(f"no {bits}-bit prime with easy p^2-1 in {max_candidates} tries")
