# tests/conftest.py

import numpy as np
import pytest

from mds_pir.field import binary_field, prime_field
from mds_pir.mds import MessageSet, encode_storage
from mds_pir.params import derive
from mds_pir.schemes import build_scheme


def make_scheme(n: int, t: int, k: int, scheme: str, **kwargs):
    return build_scheme(derive(n, t, k, 256, scheme), **kwargs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def gf256():
    return binary_field(8)


@pytest.fixture(scope="session")
def gf7():
    return prime_field(7)


@pytest.fixture(scope="session")
def scheme_a():
    """Construction-A at (N,T,K) = (3,2,3)."""
    return make_scheme(3, 2, 3, "a")


@pytest.fixture(scope="session")
def scheme_b_high():
    """Construction-B, high rate, at (5,3,4)."""
    return make_scheme(5, 3, 4, "b")


@pytest.fixture(scope="session")
def scheme_b_low():
    """Construction-B, low rate, at (5,2,4)."""
    return make_scheme(5, 2, 4, "b")


@pytest.fixture(scope="session")
def scheme_k2():
    """The K=2 scheme at (N,T) = (3,2)."""
    return make_scheme(3, 2, 2, "k2")


@pytest.fixture
def retrieve():
    """Run one retrieval directly against freshly encoded shards."""

    def _retrieve(scheme, msgs: MessageSet, k_star: int, key):
        shards = encode_storage(scheme.code, msgs)
        queries = scheme.queries(k_star, key)
        answers = [scheme.answer(shards[q.db_index], q) for q in queries]
        return answers, scheme.reconstruct(answers, k_star, key)

    return _retrieve
