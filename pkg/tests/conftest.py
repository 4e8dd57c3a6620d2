import random

import pytest

from hidden import paillier


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def paillier_512():
    return paillier.keygen(bits=512, rng=random.Random(512))


@pytest.fixture(scope="session")
def paillier_35():
    return paillier.keygen(p=5, q=7)
