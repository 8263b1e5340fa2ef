# schemes/scheme_b.py
"""
Construction-B.

High rate (s >= r): queries are clamped at s, each stored column V^k_n is re-encoded by an
(s, r) column code, and the binary pattern matrix P selects which coded components enter
each answer symbol. Reconstruction cancels interference per component, decodes the desired
column at the T databases that see r components of it, and decodes the message rows.

Low rate (r >= s): queries are clamped at r, the grid uses a single pseudo index r, and
each database returns either all s components or nothing.

When r = s the high-rate construction is used.
"""

from dataclasses import dataclass
from fractions import Fraction
import logging
from math import log2
from typing import Iterator, Sequence

import galois
import numpy as np

from ..errors import (
    DimensionMismatch,
    InvalidParams,
    MalformedFrame,
    MalformedTranscript,
    WrongRegime,
)
from ..mds import MdsCode, Shard, build_vandermonde, decode_any_t
from ..params import Regime, SchemeTag, SystemParams, regime
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
    key_upload_bits,
    sample_key,
)
from .scheme_a import expected_download

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PatternMatrix:
    """P (s x (s+1)) and its zero-extended form P̄ (s x (s+r)), as 0/1 int arrays."""

    p_mat: np.ndarray
    p_bar: np.ndarray


@dataclass(frozen=True)
class QueryB:
    """
    Query for database ``db_index``.

    ``entries`` is the clamped query, ``auxiliary`` the unclamped shifted key it came from.
    ``auxiliary`` is None when only the clamped form is known (a query decoded by a node).
    """

    entries: tuple[int, ...]
    db_index: int
    auxiliary: tuple[int, ...] | None = None


@dataclass(frozen=True)
class UploadCost:
    bits: float
    branch: str  # "key" (send the shifted key) or "clamped" (send the clamped query)


def _use_high(params: SystemParams) -> bool:
    return regime(params) is not Regime.LOW_RATE


def _require(params: SystemParams, high: bool) -> None:
    if high and not _use_high(params):
        raise WrongRegime(f"high-rate operation needs s >= r, got r={params.r}, s={params.s}")
    if not high and params.s > params.r:
        raise WrongRegime(f"low-rate operation needs r >= s, got r={params.r}, s={params.s}")


def _check_shard(shard: Shard, db_index: int, params: SystemParams) -> None:
    if shard.db_index != db_index:
        raise DimensionMismatch(f"query for database {db_index} applied to shard {shard.db_index}")
    if shard.cells.shape != (params.k, params.m):
        raise DimensionMismatch(f"shard shape {shard.cells.shape} != {(params.k, params.m)}")


def _columns(q: QueryB, auxiliary: bool) -> tuple[int, ...]:
    if not auxiliary:
        return q.entries
    if q.auxiliary is None:
        raise DimensionMismatch(f"query for database {q.db_index} carries no auxiliary form")
    return q.auxiliary


# ============================================================================
# High-rate regime
# ============================================================================


def build_pattern(params: SystemParams) -> PatternMatrix:
    """
    P(i, j) = 1 iff j < s and (j - i) mod s < r: row 0 is r ones then zeros, row i its cyclic
    shift by i over the first s columns, last column zero.

    Raises:
        WrongRegime: if s < r
    """
    _require(params, high=True)
    r, s = params.r, params.s
    rows = np.arange(s)[:, None]
    cols = np.arange(s + 1)[None, :]
    p_mat = ((cols < s) & ((cols - rows) % s < r)).astype(np.int64)
    p_bar = np.zeros((s, s + r), dtype=np.int64)
    p_bar[:, : s + 1] = p_mat
    return PatternMatrix(p_mat=p_mat, p_bar=p_bar)


def build_column_code(params: SystemParams, code: MdsCode) -> MdsCode:
    """(s, r) column code over the base code's field."""
    return build_vandermonde(params.r, params.s, code.field)


def gen_query_high(params: SystemParams, k_star: int, key: RandomKey, n: int) -> QueryB:
    _require(params, high=True)
    aux = aux_query(params, k_star, key, n)
    return QueryB(entries=tuple(min(a, params.s) for a in aux), db_index=n, auxiliary=aux)


def _selection(pattern: PatternMatrix, columns: Sequence[int], auxiliary: bool) -> np.ndarray:
    """K x s selection mask, element (k, i) = P(i, column_k)."""
    matrix = pattern.p_bar if auxiliary else pattern.p_mat
    return matrix[:, np.asarray(columns, dtype=np.intp)].T


def kept_high(pattern: PatternMatrix, q: QueryB, auxiliary: bool = False) -> tuple[int, ...]:
    mask = _selection(pattern, _columns(q, auxiliary), auxiliary)
    return tuple(int(i) for i in np.flatnonzero(mask.any(axis=0)))


def gen_answer_high(
    shard: Shard,
    q: QueryB,
    code_c: MdsCode,
    params: SystemParams,
    pattern: PatternMatrix | None = None,
    auxiliary: bool = False,
) -> Answer:
    """
    Component i = sum over k of (V^k_n coded by the column code)[i] * P(i, q_k).

    With ``auxiliary`` the unclamped query is read against the extended pattern P̄; the answer
    is identical.

    Raises:
        DimensionMismatch: on a shard/query mismatch or a column code that is not (s, r)
    """
    _check_shard(shard, q.db_index, params)
    if (code_c.t, code_c.n) != (params.r, params.s):
        raise DimensionMismatch(
            f"column code must have dimension r={params.r}, length s={params.s}; "
            f"got ({code_c.t}, {code_c.n})"
        )
    pattern = pattern or build_pattern(params)
    mask = _selection(pattern, _columns(q, auxiliary), auxiliary)

    coded = shard.cells @ code_c.generator
    intermediate = np.add.reduce(coded * code_c.field.array(mask), axis=0)

    kept = tuple(int(i) for i in np.flatnonzero(mask.any(axis=0)))
    return Answer(symbols=intermediate[np.asarray(kept, dtype=np.intp)], kept=kept)


def reconstruct_high(
    answers: Sequence[Answer],
    k_star: int,
    key: RandomKey,
    code: MdsCode,
    code_c: MdsCode,
    params: SystemParams,
    pattern: PatternMatrix | None = None,
) -> galois.FieldArray:
    """
    Recover message k* in the high-rate regime.

    Raises:
        MalformedTranscript: when |T̃_i| != T, |N| != T or some |S_n| != r for n in N
    """
    if len(answers) != params.n:
        raise MalformedTranscript(f"expected {params.n} answers, got {len(answers)}")
    pattern = pattern or build_pattern(params)
    field = code.field
    n_db, r, s, t = params.n, params.r, params.s, params.t

    desired = _desired_columns(params, k_star, key)
    hits = pattern.p_mat[:, desired]  # s x N, hits[i, n] = P(i, Q_{k*, n})
    intermediate = [answer.expand(s) for answer in answers]

    exposures: list[dict[int, object]] = [{} for _ in range(n_db)]
    for i in range(s):
        interference = [n for n in range(n_db) if hits[i, n] == 0]
        if len(interference) != t:
            raise MalformedTranscript(f"|T~_{i}| = {len(interference)}, expected {t}")
        summed = decode_any_t(code, [(n, intermediate[n][i]) for n in interference])
        for n in range(n_db):
            if hits[i, n]:
                exposures[n][i] = field.symbol(intermediate[n][i]) - code.project(summed, n)

    usable = [n for n in range(n_db) if len(exposures[n]) >= r]
    if len(usable) != t:
        raise MalformedTranscript(f"|N| = {len(usable)}, expected {t}")
    for n in usable:
        if len(exposures[n]) != r:
            raise MalformedTranscript(f"|S_{n}| = {len(exposures[n])}, expected {r}")

    # column n of the desired r x T message matrix times the base generator
    stored = {n: decode_any_t(code_c, exposures[n].items()) for n in usable}

    rows = [decode_any_t(code, [(n, stored[n][m]) for n in usable]) for m in range(r)]
    return field.stack_rows([row.reshape(1, -1) for row in rows], t).reshape(-1)


def decoding_sets_high(
    params: SystemParams, k_star: int, key: RandomKey, pattern: PatternMatrix | None = None
) -> DecodingSets:
    pattern = pattern or build_pattern(params)
    hits = pattern.p_mat[:, _desired_columns(params, k_star, key)]
    sets = DecodingSets()
    for i in range(params.s):
        sets.expect(f"T~_{i}", int((hits[i] == 0).sum()), params.t)
    weights = hits.sum(axis=0)
    usable = [n for n in range(params.n) if weights[n] >= params.r]
    sets.expect("N", len(usable), params.t)
    for n in usable:
        sets.expect(f"S_{n}", int(weights[n]), params.r)
    return sets


def _desired_columns(params: SystemParams, k_star: int, key: RandomKey) -> list[int]:
    return [gen_query_high(params, k_star, key, n).entries[k_star] for n in range(params.n)]


# ============================================================================
# Low-rate regime
# ============================================================================


def gen_query_low(params: SystemParams, k_star: int, key: RandomKey, n: int) -> QueryB:
    _require(params, high=False)
    aux = aux_query(params, k_star, key, n)
    return QueryB(entries=tuple(min(a, params.r) for a in aux), db_index=n, auxiliary=aux)


def expand_low(q: QueryB, params: SystemParams, auxiliary: bool = False) -> np.ndarray:
    """K x s grid: r where the entry is r (pseudo), else (entry + i) mod r."""
    _require(params, high=False)
    entries = np.minimum(np.asarray(_columns(q, auxiliary), dtype=np.int64), params.r)
    offsets = np.arange(params.s, dtype=np.int64)
    shifted = (entries[:, None] + offsets[None, :]) % params.r
    return np.where(entries[:, None] == params.r, params.r, shifted)


def kept_low(q: QueryB, params: SystemParams, auxiliary: bool = False) -> tuple[int, ...]:
    if min(_columns(q, auxiliary)) < params.r:
        return tuple(range(params.s))
    return ()


def gen_answer_low(
    shard: Shard, q: QueryB, params: SystemParams, auxiliary: bool = False
) -> Answer:
    """
    All s grid sums when some entry is below r, otherwise an empty answer.

    Raises:
        WrongRegime: if s > r
        DimensionMismatch: on a shard/query mismatch
    """
    _check_shard(shard, q.db_index, params)
    grid = expand_low(q, params, auxiliary)
    kept = kept_low(q, params, auxiliary)
    if not kept:
        return Answer(symbols=shard.cells.flatten()[:0], kept=())

    padded = shard.padded(params.r + 1)
    picked = padded[np.arange(params.k)[:, None], grid]
    return Answer(symbols=np.add.reduce(picked, axis=0), kept=kept)


def reconstruct_low(
    answers: Sequence[Answer],
    k_star: int,
    key: RandomKey,
    code: MdsCode,
    params: SystemParams,
) -> galois.FieldArray:
    if len(answers) != params.n:
        raise MalformedTranscript(f"expected {params.n} answers, got {len(answers)}")
    intermediate = [answer.expand(params.s) for answer in answers]
    desired_rows = _desired_rows_low(params, k_star, key)
    return cancel_interference(code, intermediate, desired_rows, params.r, params.s)


def decoding_sets_low(params: SystemParams, k_star: int, key: RandomKey) -> DecodingSets:
    desired_rows = _desired_rows_low(params, k_star, key)
    interference, usable = interference_sets(desired_rows, params.r, params.s)
    sets = DecodingSets()
    for i, members in enumerate(interference):
        sets.expect(f"T_{i}", len(members), params.t)
    for m, members in enumerate(usable):
        sets.expect(f"N_{m}", len(set(members)), params.t)
    if any(members != interference[0] for members in interference):
        sets.violations.append("interference sets T_i differ across i")
    return sets


def _desired_rows_low(params: SystemParams, k_star: int, key: RandomKey) -> list[np.ndarray]:
    return [
        expand_low(gen_query_low(params, k_star, key, n), params)[k_star] for n in range(params.n)
    ]


# ============================================================================
# Costs
# ============================================================================


def upload_cost_bits_b(params: SystemParams, which: Regime | None = None) -> UploadCost:
    """
    min[N(K-1) log2(s+r), N K log2(c+1)] with c = s (high rate) or r (low rate).

    The key branch sends the shifted key (K-1 free entries); the clamped branch sends all K
    clamped entries.
    """
    which = which or regime(params)
    clamp = params.r if which is Regime.LOW_RATE else params.s
    key_bits = key_upload_bits(params)
    clamped_bits = params.n * params.k * log2(clamp + 1)
    if key_bits <= clamped_bits:
        return UploadCost(bits=key_bits, branch="key")
    return UploadCost(bits=clamped_bits, branch="clamped")


# ============================================================================
# Scheme
# ============================================================================


class SchemeB(PirScheme):
    """
    Construction-B in the regime fixed by (N, T).

    With ``auxiliary=True`` queries travel unclamped over {0..r+s-1} and databases read them
    against P̄ (high rate) or clamp them themselves (low rate); answers are unchanged.
    """

    tag = SchemeTag.B.value

    def __init__(self, params: SystemParams, code: MdsCode, auxiliary: bool = False):
        if params.scheme is SchemeTag.K2:
            raise InvalidParams("Construction-B needs M = r sub-messages; got K=2 scheme params")
        super().__init__(params, code)
        self.auxiliary = auxiliary
        self.high = _use_high(params)
        self.pattern = build_pattern(params) if self.high else None
        self.code_c = build_column_code(params, code) if self.high else None
        logger.debug(
            f"Construction-B {'high' if self.high else 'low'}-rate at (N,T,K)="
            f"({params.n},{params.t},{params.k}){' auxiliary queries' if auxiliary else ''}"
        )

    @property
    def regime(self) -> Regime:
        return Regime.HIGH_RATE if self.high else Regime.LOW_RATE

    @property
    def alphabet(self) -> int:
        """Number of distinct values a transmitted query entry can take."""
        if self.auxiliary:
            return self.params.key_modulus
        return (self.params.s if self.high else self.params.r) + 1

    def sample_key(self, rng: np.random.Generator) -> RandomKey:
        return sample_key(self.params, rng)

    def key_space(self) -> Iterator[tuple[RandomKey, Fraction]]:
        weight = Fraction(1, key_space_size(self.params))
        for key in iter_keys(self.params):
            yield key, weight

    def key_space_size(self) -> int:
        return key_space_size(self.params)

    def queries(self, k_star: int, key: RandomKey) -> list[QueryB]:
        self.check_k_star(k_star)
        gen = gen_query_high if self.high else gen_query_low
        return [gen(self.params, k_star, key, n) for n in range(self.params.n)]

    def kept_positions(self, query: QueryB) -> tuple[int, ...]:
        if self.high:
            return kept_high(self.pattern, query, self.auxiliary)
        return kept_low(query, self.params, self.auxiliary)

    def answer(self, shard: Shard, query: QueryB) -> Answer:
        if self.high:
            return gen_answer_high(
                shard, query, self.code_c, self.params, self.pattern, self.auxiliary
            )
        return gen_answer_low(shard, query, self.params, self.auxiliary)

    def reconstruct(
        self, answers: Sequence[Answer], k_star: int, key: RandomKey
    ) -> galois.FieldArray:
        if self.high:
            return reconstruct_high(
                answers, k_star, key, self.code, self.code_c, self.params, self.pattern
            )
        return reconstruct_low(answers, k_star, key, self.code, self.params)

    def decoding_sets(self, k_star: int, key: RandomKey) -> DecodingSets:
        if self.high:
            return decoding_sets_high(self.params, k_star, key, self.pattern)
        return decoding_sets_low(self.params, k_star, key)

    def encode_query(self, query: QueryB) -> bytes:
        return encode_entries(_columns(query, self.auxiliary))

    def decode_query(self, payload: bytes, db_index: int) -> QueryB:
        self.check_db_index(db_index)
        entries = decode_entries(payload, self.params.k, self.alphabet)
        if not self.auxiliary:
            return QueryB(entries=entries, db_index=db_index)
        if sum(entries) % self.params.key_modulus != db_index % self.params.key_modulus:
            raise MalformedFrame(f"auxiliary query {entries} is not valid for database {db_index}")
        clamp = self.params.s if self.high else self.params.r
        return QueryB(
            entries=tuple(min(e, clamp) for e in entries), db_index=db_index, auxiliary=entries
        )

    def upload_cost(self) -> UploadCost:
        return upload_cost_bits_b(self.params, self.regime)

    def upload_cost_bits(self) -> float:
        return self.upload_cost().bits

    def expected_download_formula(self) -> Fraction:
        return expected_download(self.params)

    def target_message_size(self) -> int:
        return self.params.r * self.params.t
