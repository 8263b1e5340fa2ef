# schemes/scheme_k2.py
"""
Two-message retrieval with message size L = T (requires 2T >= N).

With probability T/N the databases are split into G0, G1, G2 of sizes N-T, 2T-N, N-T: G0
returns V^0 + V^1, G1 returns both symbols, G2 returns the undesired symbol only. Otherwise
they are split into G3, G4 of sizes T, N-T: G3 returns the desired symbol, G4 nothing.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from itertools import combinations
import logging
from math import comb, factorial, log2
from typing import Iterator, Sequence

import galois
import numpy as np

from ..errors import DimensionMismatch, InvalidParams, MalformedFrame, MalformedTranscript
from ..mds import MdsCode, Shard, decode_any_t
from ..params import SchemeTag, SystemParams
from .base import Answer, DecodingSets, PirScheme

logger = logging.getLogger(__name__)


class Strategy(str, Enum):
    SUM = "sum"
    DIRECT = "direct"


class K2Tag(IntEnum):
    """Request kinds; the value is the wire byte (SEND_NOTHING travels as an empty payload)."""

    SEND_NOTHING = 0
    SEND_SUM = 1
    SEND_BOTH = 2
    SEND_ONLY_0 = 3
    SEND_ONLY_1 = 4


SYMBOL_COUNT = {
    K2Tag.SEND_NOTHING: 0,
    K2Tag.SEND_SUM: 1,
    K2Tag.SEND_BOTH: 2,
    K2Tag.SEND_ONLY_0: 1,
    K2Tag.SEND_ONLY_1: 1,
}


@dataclass(frozen=True)
class PartitionK2:
    """Strategy plus groups (G0, G1, G2) for SUM or (G3, G4) for DIRECT, each sorted."""

    strategy: Strategy
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        expected = 3 if self.strategy is Strategy.SUM else 2
        if len(self.groups) != expected:
            raise ValueError(
                f"{self.strategy.value} partition needs {expected} groups, "
                f"got {len(self.groups)}"
            )
        members = [n for group in self.groups for n in group]
        if len(members) != len(set(members)):
            raise ValueError(f"partition groups overlap: {self.groups}")

    def as_dict(self) -> dict:
        return {"strategy": self.strategy.value, "groups": [list(group) for group in self.groups]}


@dataclass(frozen=True)
class QueryK2:
    tag: K2Tag
    db_index: int


def group_sizes(params: SystemParams, strategy: Strategy) -> tuple[int, ...]:
    n, t = params.n, params.t
    if strategy is Strategy.SUM:
        return (n - t, 2 * t - n, n - t)
    return (t, n - t)


def strategy_probability(params: SystemParams, strategy: Strategy) -> Fraction:
    if strategy is Strategy.SUM:
        return Fraction(params.t, params.n)
    return Fraction(params.n - params.t, params.n)


def _check_params(params: SystemParams) -> None:
    if params.k != 2 or 2 * params.t < params.n or params.m != 1:
        raise InvalidParams(
            f"the K=2 scheme needs k=2, 2t >= n and one sub-message, got "
            f"(n,t,k,m)=({params.n},{params.t},{params.k},{params.m})"
        )


def _cut(order: Sequence[int], sizes: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    groups, start = [], 0
    for size in sizes:
        groups.append(tuple(sorted(int(n) for n in order[start : start + size])))
        start += size
    return tuple(groups)


# ============================================================================
# Operations
# ============================================================================


def sample_partition(params: SystemParams, rng: np.random.Generator) -> PartitionK2:
    """Pick the strategy (SUM w.p. T/N), shuffle the databases and cut at the group sizes."""
    _check_params(params)
    strategy = Strategy.SUM if rng.integers(0, params.n) < params.t else Strategy.DIRECT
    order = rng.permutation(params.n)
    return PartitionK2(strategy=strategy, groups=_cut(order, group_sizes(params, strategy)))


def assign_queries(params: SystemParams, partition: PartitionK2, k_star: int) -> list[QueryK2]:
    return _assign(params.n, partition, k_star)


def _assign(n_db: int, partition: PartitionK2, k_star: int) -> list[QueryK2]:
    if k_star not in (0, 1):
        raise InvalidParams(f"k* must be 0 or 1, got {k_star}")
    only = (K2Tag.SEND_ONLY_0, K2Tag.SEND_ONLY_1)

    if partition.strategy is Strategy.SUM:
        tags = (K2Tag.SEND_SUM, K2Tag.SEND_BOTH, only[1 - k_star])
    else:
        tags = (only[k_star], K2Tag.SEND_NOTHING)

    assigned = {n: tag for group, tag in zip(partition.groups, tags) for n in group}
    if sorted(assigned) != list(range(n_db)):
        raise MalformedTranscript(f"partition {partition.groups} does not cover {n_db} databases")
    return [QueryK2(tag=assigned[n], db_index=n) for n in range(n_db)]


def gen_queries_k2(
    params: SystemParams, k_star: int, rng: np.random.Generator
) -> tuple[PartitionK2, list[QueryK2]]:
    partition = sample_partition(params, rng)
    return partition, assign_queries(params, partition, k_star)


def iter_partitions(params: SystemParams) -> Iterator[tuple[PartitionK2, Fraction]]:
    """Every partition of both strategies with its exact probability."""
    _check_params(params)
    everyone = range(params.n)
    for strategy in Strategy:
        sizes = group_sizes(params, strategy)
        count = factorial(params.n)
        for size in sizes:
            count //= factorial(size)
        weight = strategy_probability(params, strategy) / count
        if weight == 0:
            continue
        for groups in _ordered_splits(tuple(everyone), sizes):
            yield PartitionK2(strategy=strategy, groups=groups), weight


def _ordered_splits(
    pool: tuple[int, ...], sizes: Sequence[int]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not sizes:
        yield ()
        return
    for head in combinations(pool, sizes[0]):
        rest = tuple(n for n in pool if n not in head)
        for tail in _ordered_splits(rest, sizes[1:]):
            yield (head,) + tail


def partition_count(params: SystemParams) -> int:
    n, t = params.n, params.t
    sum_count = factorial(n) // (factorial(n - t) ** 2 * factorial(2 * t - n))
    return sum_count + comb(n, t)


def gen_answer_k2(shard: Shard, q: QueryK2) -> Answer:
    if shard.db_index != q.db_index:
        raise DimensionMismatch(
            f"query for database {q.db_index} applied to shard {shard.db_index}"
        )
    if shard.cells.shape != (2, 1):
        raise DimensionMismatch(f"K=2 shard must be 2 x 1, got {shard.cells.shape}")
    v0, v1 = shard.cells[0, 0], shard.cells[1, 0]
    symbols = {
        K2Tag.SEND_NOTHING: [],
        K2Tag.SEND_SUM: [v0 + v1],
        K2Tag.SEND_BOTH: [v0, v1],
        K2Tag.SEND_ONLY_0: [v0],
        K2Tag.SEND_ONLY_1: [v1],
    }[q.tag]
    raw = np.array([int(x) for x in symbols], dtype=np.int64)
    return Answer(symbols=type(shard.cells)(raw), kept=tuple(range(len(symbols))))


def reconstruct_k2(
    answers: Sequence[Answer], partition: PartitionK2, k_star: int, code: MdsCode
) -> galois.FieldArray:
    """
    Sum strategy: decode the undesired message from G1 and G2, cancel it out of the G0 sums,
    then decode the desired message from G0 and G1. Direct strategy: decode from G3.

    Raises:
        MalformedTranscript: when an answer has the wrong number of symbols
    """
    if len(answers) != code.n:
        raise MalformedTranscript(f"expected {code.n} answers, got {len(answers)}")
    queries = _assign(code.n, partition, k_star)
    for query, answer in zip(queries, answers):
        if len(answer) != SYMBOL_COUNT[query.tag]:
            raise MalformedTranscript(
                f"database {query.db_index} answered {len(answer)} symbols to {query.tag.name}"
            )

    if partition.strategy is Strategy.DIRECT:
        direct, _ = partition.groups
        return decode_any_t(code, [(n, answers[n].symbols[0]) for n in direct])

    sums, both, single = partition.groups
    other = 1 - k_star
    undesired_points = [(n, answers[n].symbols[other]) for n in both]
    undesired_points += [(n, answers[n].symbols[0]) for n in single]
    undesired = decode_any_t(code, undesired_points)
    desired_points = [(n, answers[n].symbols[k_star]) for n in both]
    desired_points += [(n, answers[n].symbols[0] - code.project(undesired, n)) for n in sums]
    return decode_any_t(code, desired_points)


def decoding_sets_k2(params: SystemParams, partition: PartitionK2) -> DecodingSets:
    sets = DecodingSets()
    sizes = group_sizes(params, partition.strategy)
    for index, (group, size) in enumerate(zip(partition.groups, sizes)):
        label = index if partition.strategy is Strategy.SUM else index + 3
        sets.expect(f"G{label}", len(group), size)
    if partition.strategy is Strategy.SUM:
        sums, both, single = partition.groups
        sets.expect("G1+G2", len(both) + len(single), params.t)
        sets.expect("G0+G1", len(sums) + len(both), params.t)
    return sets


# ============================================================================
# Scheme
# ============================================================================


class SchemeK2(PirScheme):
    """The randomized-partition scheme; its key is a PartitionK2."""

    tag = SchemeTag.K2.value

    def __init__(self, params: SystemParams, code: MdsCode):
        _check_params(params)
        super().__init__(params, code)

    def sample_key(self, rng: np.random.Generator) -> PartitionK2:
        return sample_partition(self.params, rng)

    def key_space(self) -> Iterator[tuple[PartitionK2, Fraction]]:
        return iter_partitions(self.params)

    def key_space_size(self) -> int:
        return partition_count(self.params)

    def queries(self, k_star: int, key: PartitionK2) -> list[QueryK2]:
        self.check_k_star(k_star)
        return assign_queries(self.params, key, k_star)

    def kept_positions(self, query: QueryK2) -> tuple[int, ...]:
        return tuple(range(SYMBOL_COUNT[query.tag]))

    def answer(self, shard: Shard, query: QueryK2) -> Answer:
        return gen_answer_k2(shard, query)

    def reconstruct(
        self, answers: Sequence[Answer], k_star: int, key: PartitionK2
    ) -> galois.FieldArray:
        return reconstruct_k2(answers, key, k_star, self.code)

    def decoding_sets(self, k_star: int, key: PartitionK2) -> DecodingSets:
        return decoding_sets_k2(self.params, key)

    def encode_query(self, query: QueryK2) -> bytes:
        if query.tag is K2Tag.SEND_NOTHING:
            return b""
        return bytes([query.tag.value])

    def decode_query(self, payload: bytes, db_index: int) -> QueryK2:
        self.check_db_index(db_index)
        if not payload:
            return QueryK2(tag=K2Tag.SEND_NOTHING, db_index=db_index)
        if len(payload) != 1 or payload[0] not in (1, 2, 3, 4):
            raise MalformedFrame(f"invalid K=2 query payload {payload.hex()}")
        return QueryK2(tag=K2Tag(payload[0]), db_index=db_index)

    def upload_cost_bits(self) -> float:
        """N log2 of the number of request kinds with positive probability."""
        kinds = 4 + (1 if 2 * self.params.t > self.params.n else 0)
        return self.params.n * log2(kinds)

    def expected_download_formula(self) -> Fraction:
        """T (N + T) / N."""
        return Fraction(self.params.t * (self.params.n + self.params.t), self.params.n)

    def target_message_size(self) -> int:
        return self.params.t
