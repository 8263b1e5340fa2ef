# tests/test_analysis.py

from fractions import Fraction
from math import log2

import pytest

from mds_pir.analysis import (
    CoefficientProbe,
    VerificationReport,
    capacity,
    check_enumerable,
    download_by_message,
    expected_download,
    extract_coefficients,
    format_rational,
    j_subsets,
    max_download,
    query_distributions,
    run_suite,
    verify_compression,
    verify_correctness,
    verify_decoding_sets,
    verify_mds,
    verify_message_size,
    verify_p0,
    verify_p1,
    verify_privacy,
    verify_rate,
    verify_structure,
    verify_upload,
)
from mds_pir.errors import EnumerationTooLarge, InvalidParams
from mds_pir.mds import MessageSet, encode_storage
from mds_pir.params import derive
from mds_pir.schemes import QueryA, RandomKey, build_scheme

# ============================================================================
# Capacity and download
# ============================================================================


@pytest.mark.parametrize(
    "n, t, k, expected",
    [
        (3, 2, 3, Fraction(9, 19)),
        (5, 3, 4, Fraction(125, 272)),
        (5, 2, 4, Fraction(125, 203)),
        (3, 2, 2, Fraction(3, 5)),
        (4, 1, 1, Fraction(1)),
    ],
)
def test_capacity(n, t, k, expected):
    assert capacity(n, t, k) == expected


@pytest.mark.parametrize("n, t, k", [(3, 3, 2), (3, 0, 2), (3, 1, 0)])
def test_capacity_rejects_invalid_points(n, t, k):
    with pytest.raises(InvalidParams):
        capacity(n, t, k)


@pytest.mark.parametrize(
    "fixture, download",
    [
        ("scheme_a", Fraction(38, 9)),
        ("scheme_b_high", Fraction(1632, 125)),
        ("scheme_b_low", Fraction(1218, 125)),
        ("scheme_k2", Fraction(10, 3)),
    ],
)
def test_expected_download(fixture, download, request):
    scheme = request.getfixturevalue(fixture)
    assert expected_download(scheme) == download
    assert scheme.expected_download_formula() == download
    params = scheme.params
    assert Fraction(params.l) / download == capacity(params.n, params.t, params.k)


def test_download_is_the_same_for_every_requested_message(scheme_a):
    assert download_by_message(scheme_a) == [Fraction(38, 9)] * 3
    # F = (1,0,2) keeps both columns at every database for k* = 0
    assert max_download(scheme_a) == 6


def test_enumeration_cap(scheme_a):
    check_enumerable(9, cap=9)
    with pytest.raises(EnumerationTooLarge):
        check_enumerable(10, cap=9)
    with pytest.raises(EnumerationTooLarge):
        verify_privacy(scheme_a, cap=1)
    with pytest.raises(EnumerationTooLarge):
        expected_download(scheme_a, cap=1)


# ============================================================================
# Claim checks
# ============================================================================


POINTS = [
    "scheme_a",
    "scheme_k2",
    pytest.param("scheme_b_high", marks=pytest.mark.slow),
    pytest.param("scheme_b_low", marks=pytest.mark.slow),
]


@pytest.mark.parametrize("fixture", POINTS)
def test_claims_hold(fixture, request, rng):
    scheme = request.getfixturevalue(fixture)
    reports = [
        verify_message_size(scheme),
        verify_mds(scheme),
        verify_privacy(scheme),
        verify_decoding_sets(scheme),
        verify_rate(scheme),
        verify_upload(scheme),
        verify_correctness(scheme, rng),
    ]
    failed = [report.as_dict() for report in reports if not report.passed]
    assert not failed


def test_privacy_distributions(scheme_a):
    distributions = query_distributions(scheme_a)
    for per_db in distributions:
        for dist in per_db:
            assert len(dist) == 9
            assert sum(dist.values()) == 1
            assert set(dist.values()) == {Fraction(1, 9)}


def test_rate_report(scheme_a):
    report = verify_rate(scheme_a)
    assert report.expected == report.observed == Fraction(9, 19)
    assert report.enumeration_size == 27
    assert report.details["observed_download"] == ["38/9"] * 3


def test_upload_report(scheme_a, scheme_b_high, scheme_k2):
    report = verify_upload(scheme_a)
    assert report.details["relation"] == "equal"
    assert report.details["query_set_sizes"] == [9, 9, 9]
    assert report.observed == pytest.approx(6 * log2(3))

    report = verify_upload(scheme_k2)
    assert report.passed
    assert report.details["query_set_sizes"] == [5, 5, 5]

    report = verify_upload(scheme_b_high)
    assert report.passed
    assert report.details["relation"] == "at_most"
    assert report.details["branch"] == "key"
    assert report.expected == pytest.approx(15 * log2(5))


def test_random_trials(scheme_a, rng):
    report = verify_correctness(scheme_a, rng, trials=25)
    assert report.passed
    assert report.enumeration_size == 25
    with pytest.raises(ValueError):
        verify_correctness(scheme_a, rng, trials=0)


@pytest.mark.slow
@pytest.mark.parametrize(
    "n, t, k, scheme",
    [(3, 2, 3, "a"), (5, 3, 4, "b"), (5, 2, 4, "b"), (3, 2, 2, "k2"), (4, 2, 2, "a")],
)
def test_thousand_random_retrievals(n, t, k, scheme, rng):
    report = verify_correctness(build_scheme(derive(n, t, k, 256, scheme)), rng, trials=1000)
    assert report.observed == 0
    assert report.enumeration_size == 1000


def test_message_size_report(scheme_a, scheme_k2):
    report = verify_message_size(scheme_a)
    assert report.expected == report.observed == 2
    assert verify_message_size(scheme_k2).observed == 2


@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["scheme_b_high", "scheme_b_low"])
def test_compression(fixture, request, rng):
    report = verify_compression(request.getfixturevalue(fixture), rng)
    assert report.passed
    assert report.enumeration_size == 125 * 4 * 5


def test_mds_report_covers_column_code(scheme_b_high):
    report = verify_mds(scheme_b_high)
    assert report.passed
    assert report.details["codes"] == {"base": True, "column": True}


# ============================================================================
# Answer structure
# ============================================================================


def test_j_subsets():
    assert len(j_subsets(3)) == 8
    assert len(j_subsets(4)) == 16
    subsets = j_subsets(5)
    assert len(subsets) == 17
    assert frozenset() in subsets
    assert frozenset(range(5)) in subsets
    assert max(len(s) for s in subsets[:-1]) == 2


def test_coefficients_of_single_column_query(scheme_a):
    # Q = (0,0,0) keeps column 0 only, which sums W^{k,0} . G*_0 with G*_0 = (1, 1)
    coefficients = extract_coefficients(scheme_a, QueryA(entries=(0, 0, 0), db_index=0))
    assert coefficients.matrix.shape == (1, 6)
    assert [int(x) for x in coefficients.matrix[0]] == [1] * 6
    assert coefficients.restrict({0, 2}, 2).shape == (1, 2)


def test_coefficients_reproduce_answers(scheme_a, gf256, rng):
    probe = CoefficientProbe(scheme_a)
    msgs = MessageSet.random(scheme_a.params, gf256, rng)
    shards = encode_storage(scheme_a.code, msgs)
    key = RandomKey(f=(1, 2, 0), modulus=3)
    for query in scheme_a.queries(1, key):
        coefficients = probe.coefficients(query)
        answer = scheme_a.answer(shards[query.db_index], query)
        assert [int(x) for x in coefficients.matrix @ msgs.flat()] == [
            int(x) for x in answer.symbols
        ]
    assert probe.size == 3


def test_p0_and_p1_for_one_realization(scheme_a):
    key = RandomKey(f=(2, 2, 2), modulus=3)
    assert verify_p0(scheme_a, 0, key, {1}).passed
    assert verify_p0(scheme_a, 0, key, set()).passed
    assert verify_p1(scheme_a, 0, key).passed


def test_structure_exhaustive(scheme_a):
    p0, p1 = verify_structure(scheme_a)
    assert (p0.claim, p1.claim) == ("p0", "p1")
    assert p0.passed and p1.passed
    assert p0.enumeration_size == 27


def test_structure_sampled(scheme_k2, rng):
    p0, p1 = verify_structure(scheme_k2, rng, samples=20)
    assert p0.passed and p1.passed
    assert p0.enumeration_size == 20


@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["scheme_b_high", "scheme_b_low"])
def test_structure_sampled_construction_b(fixture, request, rng):
    p0, p1 = verify_structure(request.getfixturevalue(fixture), rng, samples=200)
    assert p0.enumeration_size == p1.enumeration_size == 200
    assert p0.observed == p1.observed == 0


def test_structure_sampling_needs_generator(scheme_a):
    with pytest.raises(ValueError):
        verify_structure(scheme_a, None, samples=5)


# ============================================================================
# Suite and reports
# ============================================================================


def test_run_suite_selects_claims_in_order(scheme_a, rng):
    reports = run_suite(scheme_a, rng, claims=["rate", "message_size"])
    assert [report.claim for report in reports] == ["message_size", "rate"]


def test_run_suite_skips_compression_outside_construction_b(scheme_a, rng):
    assert run_suite(scheme_a, rng, claims=["compression"]) == []


def test_run_suite_rejects_unknown_claims(scheme_a, rng):
    with pytest.raises(ValueError, match="bogus"):
        run_suite(scheme_a, rng, claims=["bogus"])


def test_run_suite_all_claims(scheme_a, rng):
    reports = run_suite(scheme_a, rng)
    claims = [report.claim for report in reports]
    assert claims == [
        "message_size",
        "mds",
        "privacy",
        "decoding_sets",
        "rate",
        "upload",
        "correctness",
        "p0",
        "p1",
    ]
    assert all(report.passed for report in reports)


def test_format_rational():
    assert format_rational(Fraction(38, 9)) == "38/9"
    assert format_rational(2) == "2/1"


def test_report_as_dict():
    report = VerificationReport(
        claim="rate",
        params={"n": 3},
        expected=Fraction(9, 19),
        observed=Fraction(9, 19),
        passed=True,
        enumeration_size=27,
        ms=1.23456,
    )
    record = report.as_dict()
    assert record == {
        "claim": "rate",
        "params": {"n": 3},
        "expected": "9/19",
        "observed": "9/19",
        "pass": True,
        "enumeration_size": 27,
        "ms": 1.235,
    }

    report.expected, report.observed, report.passed = True, False, False
    report.details = {"codes": {"base": False}}
    record = report.as_dict()
    assert record["expected"] is True
    assert record["observed"] is False
    assert record["details"] == {"codes": {"base": False}}
