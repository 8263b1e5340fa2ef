# analysis/download.py
"""Capacity formula and exact download statistics over a scheme's whole key space."""

from fractions import Fraction
import logging

from ..errors import InvalidParams, PirError
from ..schemes import PirScheme
from .report import check_enumerable

logger = logging.getLogger(__name__)


def capacity(n: int, t: int, k: int) -> Fraction:
    """
    (1 + T/N + ... + (T/N)^(K-1))^(-1), exactly.

    Raises:
        InvalidParams: unless 0 < t < n and k >= 1
    """
    if not 0 < t < n or k < 1:
        raise InvalidParams(f"capacity needs 0 < t < n and k >= 1, got (n,t,k)=({n},{t},{k})")
    ratio = Fraction(t, n)
    return 1 / sum(ratio**i for i in range(k))


def download_by_message(scheme: PirScheme, cap: int | None = None) -> list[Fraction]:
    """Exact mean total download for each requested message k*."""
    check_enumerable(scheme.key_space_size(), cap)
    totals = [Fraction(0)] * scheme.params.k
    for key, weight in scheme.key_space():
        for k_star in range(scheme.params.k):
            symbols = sum(scheme.answer_length(q) for q in scheme.queries(k_star, key))
            totals[k_star] += weight * symbols
    return totals


def expected_download(scheme: PirScheme, cap: int | None = None) -> Fraction:
    """
    Mean of sum_n l_n over all keys, which must not depend on k*.

    Raises:
        EnumerationTooLarge: when the key space exceeds the cap
        PirError: if the mean differs between requested messages
    """
    totals = download_by_message(scheme, cap)
    if len(set(totals)) != 1:
        raise PirError(f"expected download depends on the requested message: {totals}")
    return totals[0]


def max_download(scheme: PirScheme, cap: int | None = None) -> int:
    """Largest sum_n l_n over every key and requested message."""
    check_enumerable(scheme.key_space_size(), cap)
    return max(
        sum(scheme.answer_length(q) for q in scheme.queries(k_star, key))
        for key, _ in scheme.key_space()
        for k_star in range(scheme.params.k)
    )
