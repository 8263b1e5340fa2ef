# tests/test_params.py

from math import gcd, lcm

from hypothesis import given
from hypothesis import strategies as st
import pytest

from mds_pir.errors import InvalidParams
from mds_pir.params import (
    Regime,
    SchemeTag,
    auto_scheme,
    baseline_message_sizes,
    converse_applies,
    derive,
    min_message_size,
    regime,
)


@pytest.mark.parametrize(
    "n, t, k, scheme, expected",
    [
        (3, 2, 3, "a", (1, 1, 2, 1, 2)),
        (5, 3, 4, "b", (1, 2, 3, 2, 6)),
        (4, 2, 2, "a", (2, 1, 1, 1, 2)),
        (5, 2, 4, "b", (1, 3, 2, 3, 6)),
        (3, 2, 2, "k2", (1, 1, 2, 1, 2)),
    ],
)
def test_derive_examples(n, t, k, scheme, expected):
    params = derive(n, t, k, 256, scheme)
    assert (params.p, params.r, params.s, params.m, params.l) == expected
    assert params.scheme is SchemeTag(scheme)


@pytest.mark.parametrize(
    "args, fragment",
    [
        ((3, 3, 2), "t must be less than n"),
        ((3, 5, 2), "t must be less than n"),
        ((3, 0, 2), "t must be a positive integer"),
        ((3, 2, 0), "k must be a positive integer"),
        ((3, True, 2), "t must be a positive integer"),
    ],
)
def test_derive_rejects_invalid_points(args, fragment):
    with pytest.raises(InvalidParams, match=fragment):
        derive(*args)


def test_derive_rejects_small_field():
    with pytest.raises(InvalidParams, match="field order"):
        derive(8, 3, 2, q=7)


def test_k2_constraints():
    with pytest.raises(InvalidParams, match="k = 2"):
        derive(3, 2, 3, scheme="k2")
    with pytest.raises(InvalidParams, match="2t >= n"):
        derive(5, 2, 2, scheme="k2")


def test_unknown_scheme():
    with pytest.raises(InvalidParams, match="scheme must be one of"):
        derive(3, 2, 2, scheme="c")


def test_scheme_tag_is_case_insensitive():
    assert derive(3, 2, 2, scheme="K2").scheme is SchemeTag.K2


@pytest.mark.parametrize(
    "n, t, expected",
    [
        (5, 3, Regime.HIGH_RATE),
        (5, 2, Regime.LOW_RATE),
        (4, 2, Regime.BOTH),
        (3, 2, Regime.HIGH_RATE),
    ],
)
def test_regime(n, t, expected):
    assert regime(derive(n, t, 2)) is expected


@pytest.mark.parametrize("n, t, expected", [(3, 2, 2), (5, 3, 6), (6, 3, 3)])
def test_min_message_size(n, t, expected):
    assert min_message_size(n, t) == expected


def test_min_message_size_rejects_t_not_below_n():
    with pytest.raises(InvalidParams):
        min_message_size(3, 3)


@st.composite
def points(draw):
    n = draw(st.integers(min_value=2, max_value=40))
    t = draw(st.integers(min_value=1, max_value=n - 1))
    k = draw(st.integers(min_value=1, max_value=6))
    return n, t, k


@given(points(), st.sampled_from(["a", "b"]))
def test_message_size_is_lcm(point, scheme):
    n, t, k = point
    params = derive(n, t, k, 256, scheme)
    assert params.l == min_message_size(n, t) == lcm(n - t, t)
    assert params.r * params.t == params.s * (n - t)
    assert params.p == gcd(n, t)
    assert params.key_modulus * params.p == n


@given(points())
def test_derive_is_pure(point):
    assert derive(*point) == derive(*point)


def test_auto_scheme():
    assert auto_scheme(3, 2) is SchemeTag.A
    assert auto_scheme(4, 2) is SchemeTag.A
    assert auto_scheme(5, 3) is SchemeTag.B
    assert auto_scheme(5, 2) is SchemeTag.B


def test_converse_applies_above_s():
    assert converse_applies(derive(3, 2, 3))
    assert not converse_applies(derive(5, 3, 2, scheme="b"))


def test_baseline_message_sizes():
    assert baseline_message_sizes(3, 2, 3) == {
        "symmetrized": 54,
        "equal_answer_bound": 18,
        "minimum": 2,
    }


def test_as_dict_carries_scheme_value():
    record = derive(5, 3, 4, scheme="b").as_dict()
    assert record["scheme"] == "b"
    assert record["l"] == 6
