import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from params import P64, P64_FACTORS, P128, P128_FACTORS

from hidden.errors import DomainError, FactorizationError
from hidden.numtheory import (
    eg_parameters,
    factorize,
    is_probable_prime,
    pollard_brent,
    prime_factors,
    unit_group_factors,
    random_prime,
    small_primes,
)


def test_small_primes_match_sympy():
    assert list(small_primes(5000)) == list(sympy.primerange(2, 5000))


def test_primality_agrees_with_sympy_below_20000():
    for n in range(-3, 20000):
        assert is_probable_prime(n) == sympy.isprime(n), n


@settings(max_examples=300)
@given(st.integers(min_value=2, max_value=1 << 200))
def test_primality_agrees_with_sympy_large(n):
    assert is_probable_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", [561, 1105, 1729, 2465, 2821, 6601, 8911,  # Carmichael
                               3215031751, 3825123056546413051,  # strong pseudoprimes to small bases
                               (2**61 - 1) * (2**89 - 1)])
def test_composites_rejected(n):
    assert not is_probable_prime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 2**127 - 1, P64, P128])
def test_known_primes(n):
    assert is_probable_prime(n)


@pytest.mark.parametrize("bits", [8, 17, 64, 128])
def test_random_prime_size_and_residue(bits):
    rng = random.Random(bits)
    p = random_prime(bits, rng, 3, 4)
    assert p.bit_length() == bits and p % 4 == 3 and sympy.isprime(p)


@settings(max_examples=100)
@given(st.integers(min_value=1, max_value=1 << 64))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n)) == sympy.factorint(n)


def test_pollard_brent_splits_semiprime():
    p, q = 1000000007, 998244353
    f = pollard_brent(p * q, random.Random(1))
    assert f in (p, q)


def test_factorize_budget_exhaustion():
    p, q = sympy.nextprime(1 << 60), sympy.nextprime(1 << 61)
    with pytest.raises(FactorizationError):
        factorize(p * q, max_iterations=10)


def test_factorize_rejects_nonpositive():
    with pytest.raises(DomainError):
        factorize(0)


@pytest.mark.parametrize("p,factors", [(P64, P64_FACTORS), (P128, P128_FACTORS)])
def test_frozen_parameters(p, factors):
    oracle = set(sympy.factorint(p - 1)) | set(sympy.factorint(p + 1))
    assert sorted(oracle) == factors
    assert unit_group_factors(p) == factors


def test_eg_parameters_found_quickly():
    p, factors = eg_parameters(96, random.Random(96))
    assert p.bit_length() == 96 and p % 4 == 3 and sympy.isprime(p)
    assert sorted(set(sympy.factorint(p - 1)) | set(sympy.factorint(p + 1))) == factors


def test_prime_factors_small():
    assert prime_factors(528) == [2, 3, 11]
    assert prime_factors(1) == []
