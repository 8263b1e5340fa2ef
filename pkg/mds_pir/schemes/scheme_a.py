# schemes/scheme_a.py
"""
Construction-A: shifted-key queries, a K x s query grid over the stored symbols with zero pseudo
symbols for indices >= r, and reconstruction by interference cancellation.

Requires M = r sub-messages per message (scheme tags A and B).
"""

from dataclasses import dataclass
from fractions import Fraction
import logging
from math import log2
from typing import Iterator, Sequence

import galois
import numpy as np

from ..errors import DimensionMismatch, InvalidParams, MalformedFrame, MalformedTranscript
from ..mds import MdsCode, Shard
from ..params import SchemeTag, SystemParams
from .base import (
    Answer,
    DecodingSets,
    PirScheme,
    RandomKey,
    aux_query,
    cancel_interference,
    decode_entries,
    encode_entries,
    interference_sets,
    iter_keys,
    key_space_size,
    sample_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QueryA:
    """Query sent to database ``db_index``; entries sum to db_index mod r+s."""

    entries: tuple[int, ...]
    db_index: int


@dataclass(frozen=True, eq=False)
class ExpandedQueryA:
    """K x s grid, element (k, i) = (entry k + i) mod (r+s)."""

    grid: np.ndarray


# ============================================================================
# Operations
# ============================================================================


def gen_query(params: SystemParams, k_star: int, key: RandomKey, n: int) -> QueryA:
    return QueryA(entries=aux_query(params, k_star, key, n), db_index=n)


def expand_query(q: QueryA, params: SystemParams) -> ExpandedQueryA:
    entries = np.asarray(q.entries, dtype=np.int64)
    offsets = np.arange(params.s, dtype=np.int64)
    return ExpandedQueryA(grid=(entries[:, None] + offsets[None, :]) % params.key_modulus)


def kept_columns(grid: np.ndarray, r: int) -> tuple[int, ...]:
    """Columns holding at least one real (non-pseudo) symbol."""
    return tuple(int(i) for i in np.flatnonzero(grid.min(axis=0) < r))


def answer_length(q: QueryA, params: SystemParams) -> int:
    return len(kept_columns(expand_query(q, params).grid, params.r))


def gen_answer(shard: Shard, q: QueryA, params: SystemParams) -> Answer:
    """
    Sum over messages of the stored symbol each grid cell selects, one symbol per kept column.

    Raises:
        DimensionMismatch: if shard and query belong to different databases or the shard has
            the wrong shape
    """
    _check_shard(shard, q.db_index, params)
    grid = expand_query(q, params).grid

    padded = shard.padded(params.key_modulus)
    picked = padded[np.arange(params.k)[:, None], grid]
    intermediate = np.add.reduce(picked, axis=0)

    kept = kept_columns(grid, params.r)
    return Answer(symbols=intermediate[np.asarray(kept, dtype=np.intp)], kept=kept)


def reconstruct(
    answers: Sequence[Answer],
    k_star: int,
    key: RandomKey,
    params: SystemParams,
    code: MdsCode,
) -> galois.FieldArray:
    """
    Recover message k* from the N answers to ``gen_query(k_star, key, .)``.

    Raises:
        MalformedTranscript: on a wrong number of answers or a set-size violation
    """
    if len(answers) != params.n:
        raise MalformedTranscript(f"expected {params.n} answers, got {len(answers)}")
    desired_rows = _desired_rows(params, k_star, key)
    intermediate = [answer.expand(params.s) for answer in answers]
    return cancel_interference(code, intermediate, desired_rows, params.r, params.s)


def decoding_sets_a(params: SystemParams, k_star: int, key: RandomKey) -> DecodingSets:
    desired_rows = _desired_rows(params, k_star, key)
    interference, usable = interference_sets(desired_rows, params.r, params.s)
    sets = DecodingSets()
    for i, members in enumerate(interference):
        sets.expect(f"T_{i}", len(members), params.t)
    for m, members in enumerate(usable):
        sets.expect(f"N_{m}", len(set(members)), params.t)
    return sets


def upload_cost_bits(params: SystemParams) -> float:
    """N(K-1) log2(N / gcd(N, T))."""
    return params.n * (params.k - 1) * log2(params.n // params.p)


def expected_download(params: SystemParams) -> Fraction:
    """s N (1 - (T/N)^K)."""
    return params.s * params.n * (1 - Fraction(params.t, params.n) ** params.k)


def _desired_rows(params: SystemParams, k_star: int, key: RandomKey) -> list[np.ndarray]:
    return [
        expand_query(gen_query(params, k_star, key, n), params).grid[k_star]
        for n in range(params.n)
    ]


def _check_shard(shard: Shard, db_index: int, params: SystemParams) -> None:
    if shard.db_index != db_index:
        raise DimensionMismatch(f"query for database {db_index} applied to shard {shard.db_index}")
    if shard.cells.shape != (params.k, params.m):
        raise DimensionMismatch(f"shard shape {shard.cells.shape} != {(params.k, params.m)}")


# ============================================================================
# Scheme
# ============================================================================


class SchemeA(PirScheme):
    tag = SchemeTag.A.value

    def __init__(self, params: SystemParams, code: MdsCode):
        if params.scheme is SchemeTag.K2:
            raise InvalidParams("Construction-A needs M = r sub-messages; got K=2 scheme params")
        super().__init__(params, code)

    def sample_key(self, rng: np.random.Generator) -> RandomKey:
        return sample_key(self.params, rng)

    def key_space(self) -> Iterator[tuple[RandomKey, Fraction]]:
        weight = Fraction(1, key_space_size(self.params))
        for key in iter_keys(self.params):
            yield key, weight

    def key_space_size(self) -> int:
        return key_space_size(self.params)

    def queries(self, k_star: int, key: RandomKey) -> list[QueryA]:
        self.check_k_star(k_star)
        return [gen_query(self.params, k_star, key, n) for n in range(self.params.n)]

    def kept_positions(self, query: QueryA) -> tuple[int, ...]:
        return kept_columns(expand_query(query, self.params).grid, self.params.r)

    def answer(self, shard: Shard, query: QueryA) -> Answer:
        return gen_answer(shard, query, self.params)

    def reconstruct(
        self, answers: Sequence[Answer], k_star: int, key: RandomKey
    ) -> galois.FieldArray:
        return reconstruct(answers, k_star, key, self.params, self.code)

    def decoding_sets(self, k_star: int, key: RandomKey) -> DecodingSets:
        return decoding_sets_a(self.params, k_star, key)

    def encode_query(self, query: QueryA) -> bytes:
        return encode_entries(query.entries)

    def decode_query(self, payload: bytes, db_index: int) -> QueryA:
        self.check_db_index(db_index)
        entries = decode_entries(payload, self.params.k, self.params.key_modulus)
        if sum(entries) % self.params.key_modulus != db_index % self.params.key_modulus:
            raise MalformedFrame(f"query {entries} is not a valid query for database {db_index}")
        return QueryA(entries=entries, db_index=db_index)

    def upload_cost_bits(self) -> float:
        return upload_cost_bits(self.params)

    def expected_download_formula(self) -> Fraction:
        return expected_download(self.params)

    def target_message_size(self) -> int:
        return self.params.r * self.params.t
