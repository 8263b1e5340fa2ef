# analysis/structure.py
"""
Linear-algebraic structure of the answers.

Every answer is a linear function of the flattened message vector (K*L symbols). For a fixed
query the function is a matrix, probed column by column with unit message sets. Independence
and determinism statements about answers of uniform messages then become rank statements:

- P0: answers of any T databases are mutually independent given messages J, i.e. the ranks of
  their coefficient matrices (restricted to messages outside J) add up.
- P1: answers of any T databases determine all other answers given messages J containing the
  requested one, i.e. the other databases' restricted rows lie in the span of theirs.
"""

from dataclasses import dataclass
from itertools import chain, combinations
import logging
import time
from typing import Any, Iterable, Iterator

import galois
import numpy as np
from tqdm import tqdm

from ..mds import MessageSet, encode_storage
from ..schemes import PirScheme
from .report import VerificationReport, check_enumerable, timed

logger = logging.getLogger(__name__)

FULL_J_SWEEP_MAX_K = 4


@dataclass(frozen=True, eq=False)
class AnswerCoefficients:
    """l_n x (K*L) matrix; row j maps the flattened messages to answer symbol j."""

    db_index: int
    matrix: galois.FieldArray

    def restrict(self, excluded: Iterable[int], l: int) -> galois.FieldArray:  # noqa: E741
        """Columns of the messages outside ``excluded``."""
        excluded = set(excluded)
        k = self.matrix.shape[1] // l
        columns = [
            c for msg in range(k) if msg not in excluded for c in range(msg * l, (msg + 1) * l)
        ]
        return self.matrix[:, np.asarray(columns, dtype=np.intp)]


class CoefficientProbe:
    """Probes a scheme's answer map; matrices are cached per (database, query payload)."""

    def __init__(self, scheme: PirScheme):
        self.scheme = scheme
        self._unit_shards: list[list] | None = None
        self._cache: dict[tuple[int, bytes], AnswerCoefficients] = {}

    @property
    def size(self) -> int:
        """Number of distinct answer maps probed so far."""
        return len(self._cache)

    @property
    def width(self) -> int:
        return self.scheme.params.k * self.scheme.params.l

    def unit_shards(self, n: int) -> list:
        """Shard of database n for each of the K*L unit message sets."""
        if self._unit_shards is None:
            params, field = self.scheme.params, self.scheme.field
            per_position = [
                encode_storage(self.scheme.code, MessageSet.unit(params, field, position))
                for position in range(self.width)
            ]
            self._unit_shards = [[shards[db] for shards in per_position] for db in range(params.n)]
        return self._unit_shards[n]

    def coefficients(self, query: Any) -> AnswerCoefficients:
        n = query.db_index
        cache_key = (n, self.scheme.encode_query(query))
        if cache_key not in self._cache:
            self._cache[cache_key] = self._probe(query)
        return self._cache[cache_key]

    def _probe(self, query: Any) -> AnswerCoefficients:
        field = self.scheme.field
        n = query.db_index
        length = self.scheme.answer_length(query)
        if length == 0:
            return AnswerCoefficients(db_index=n, matrix=field.zeros((0, self.width)))
        columns = [self.scheme.answer(shard, query).symbols for shard in self.unit_shards(n)]
        matrix = field.stack_rows([column.reshape(1, -1) for column in columns], length).T
        return AnswerCoefficients(db_index=n, matrix=matrix)


def extract_coefficients(
    scheme: PirScheme, query: Any, probe: CoefficientProbe | None = None
) -> AnswerCoefficients:
    """Answer generating matrix of ``query`` composed with storage encoding."""
    probe = probe or CoefficientProbe(scheme)
    return probe.coefficients(query)


def j_subsets(k: int) -> list[frozenset[int]]:
    """Message subsets J: all of them for K <= 4, otherwise |J| <= 2 plus all messages."""
    messages = range(k)
    if k <= FULL_J_SWEEP_MAX_K:
        sizes = range(k + 1)
        combos = chain.from_iterable(combinations(messages, size) for size in sizes)
        return [frozenset(c) for c in combos]
    subsets = [frozenset(c) for size in range(3) for c in combinations(messages, size)]
    return subsets + [frozenset(messages)]


# ============================================================================
# Helper functions
# ============================================================================


def _stack(scheme: PirScheme, blocks: list[galois.FieldArray]) -> galois.FieldArray:
    cols = blocks[0].shape[1]
    return scheme.field.stack_rows(blocks, cols)


def _p0_violations(
    scheme: PirScheme, probe: CoefficientProbe, queries: list, subset_j: frozenset[int]
) -> list[str]:
    params = scheme.params
    restricted = [probe.coefficients(q).restrict(subset_j, params.l) for q in queries]
    if restricted[0].shape[1] == 0:
        return []
    ranks = [scheme.field.rank(block) for block in restricted]

    violations = []
    for subset in combinations(range(params.n), params.t):
        joint = scheme.field.rank(_stack(scheme, [restricted[n] for n in subset]))
        individual = sum(ranks[n] for n in subset)
        if joint != individual:
            violations.append(
                f"J={sorted(subset_j)}, T={list(subset)}: rank {joint} != {individual}"
            )
    return violations


def _p1_violations(
    scheme: PirScheme,
    probe: CoefficientProbe,
    queries: list,
    k_star: int,
    subset_j: frozenset[int],
) -> list[str]:
    params = scheme.params
    restricted = [probe.coefficients(q).restrict(subset_j, params.l) for q in queries]
    if restricted[0].shape[1] == 0:
        return []
    overall = scheme.field.rank(_stack(scheme, restricted))

    violations = []
    for subset in combinations(range(params.n), params.t):
        spanned = scheme.field.rank(_stack(scheme, [restricted[n] for n in subset]))
        if spanned != overall:
            violations.append(
                f"k*={k_star}, J={sorted(subset_j)}, T={list(subset)}: rank {spanned} < {overall}"
            )
    return violations


def _realizations(
    scheme: PirScheme, rng: np.random.Generator | None, samples: int | None
) -> Iterator[tuple[int, Any]]:
    if samples is None:
        for key, _ in scheme.key_space():
            for k_star in range(scheme.params.k):
                yield k_star, key
        return
    for _ in range(samples):
        yield int(rng.integers(0, scheme.params.k)), scheme.sample_key(rng)


# ============================================================================
# Main public functions
# ============================================================================


@timed
def verify_p0(
    scheme: PirScheme,
    k_star: int,
    key: Any,
    subset_j: Iterable[int],
    probe: CoefficientProbe | None = None,
) -> VerificationReport:
    """Rank additivity over every T-subset for one query realization and one J."""
    probe = probe or CoefficientProbe(scheme)
    subset_j = frozenset(subset_j)
    violations = _p0_violations(scheme, probe, scheme.queries(k_star, key), subset_j)
    return VerificationReport(
        claim="p0",
        params=scheme.params.as_dict(),
        expected=0,
        observed=len(violations),
        passed=not violations,
        enumeration_size=1,
        details={"first_violations": violations[:10]} if violations else {},
    )


@timed
def verify_p1(
    scheme: PirScheme, k_star: int, key: Any, probe: CoefficientProbe | None = None
) -> VerificationReport:
    """Span membership over every T-subset and every swept J containing k*, for one realization."""
    probe = probe or CoefficientProbe(scheme)
    queries = scheme.queries(k_star, key)
    violations = []
    for subset_j in j_subsets(scheme.params.k):
        if k_star in subset_j:
            violations += _p1_violations(scheme, probe, queries, k_star, subset_j)
    return VerificationReport(
        claim="p1",
        params=scheme.params.as_dict(),
        expected=0,
        observed=len(violations),
        passed=not violations,
        enumeration_size=1,
        details={"first_violations": violations[:10]} if violations else {},
    )


def verify_structure(
    scheme: PirScheme,
    rng: np.random.Generator | None = None,
    samples: int | None = None,
    cap: int | None = None,
) -> list[VerificationReport]:
    """
    P0 and P1 over every query realization (``samples=None``) or ``samples`` random ones.

    Returns:
        [p0 report, p1 report], each aggregating all realizations and J subsets
    """
    if samples is None:
        check_enumerable(scheme.key_space_size(), cap)
    elif rng is None:
        raise ValueError("sampled structure checks need a random generator")

    start = time.perf_counter()
    probe = CoefficientProbe(scheme)
    subsets = j_subsets(scheme.params.k)
    p0, p1, count = [], [], 0
    total = samples if samples is not None else scheme.key_space_size() * scheme.params.k
    realizations = tqdm(
        _realizations(scheme, rng, samples), desc="P0/P1", total=total, leave=False, disable=None
    )
    for k_star, key in realizations:
        queries = scheme.queries(k_star, key)
        count += 1
        for subset_j in subsets:
            p0 += _p0_violations(scheme, probe, queries, subset_j)
            if k_star in subset_j:
                p1 += _p1_violations(scheme, probe, queries, k_star, subset_j)
    logger.debug(f"Probed {probe.size} distinct answer maps over {count} realizations")

    elapsed = (time.perf_counter() - start) * 1000
    reports = [_aggregate("p0", scheme, p0, count), _aggregate("p1", scheme, p1, count)]
    for report in reports:
        report.ms = elapsed
    return reports


def _aggregate(
    claim: str, scheme: PirScheme, violations: list[str], count: int
) -> VerificationReport:
    for line in violations[:10]:
        logger.warning(f"{claim}: {line}")
    status = "✓" if not violations else "✗"
    logger.info(f"{status} {claim}: {len(violations)} violations over {count} realizations")
    return VerificationReport(
        claim=claim,
        params=scheme.params.as_dict(),
        expected=0,
        observed=len(violations),
        passed=not violations,
        enumeration_size=count,
        details={"first_violations": violations[:10]} if violations else {},
    )
