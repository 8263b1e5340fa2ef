# mds_pir/mds.py
"""
The (N,T) base MDS code, the (s,r) column code, message sets and per-database shards.

A code of dimension ``t`` and length ``n`` is given by a t x n generator; coordinate ``j`` of
the codeword of a length-t row vector ``w`` is ``w @ generator[:, j]``.
"""

from dataclasses import dataclass
from itertools import combinations
import logging
from typing import Iterable

import galois
import numpy as np

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    FieldTooSmall,
    IndexOutOfRange,
    InconsistentPoints,
    InsufficientPoints,
    TooLarge,
)
from .field import FieldSpec
from .params import SystemParams

logger = logging.getLogger(__name__)

EXHAUSTIVE_MDS_CAP = 20


@dataclass(frozen=True, eq=False)
class MdsCode:
    """Linear code with a t x n generator over ``field``."""

    t: int
    n: int
    generator: galois.FieldArray
    field: FieldSpec

    def __post_init__(self):
        self.field.check(self.generator)
        if self.generator.shape != (self.t, self.n):
            raise DimensionMismatch(
                f"generator shape {self.generator.shape} does not match "
                f"(t, n) = ({self.t}, {self.n})"
            )

    def column(self, j: int) -> galois.FieldArray:
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f"coordinate {j} outside [0, {self.n})")
        return self.generator[:, j]

    def encode(self, w) -> galois.FieldArray:
        """Length-n codeword of a length-t vector (or each row of a batch of vectors)."""
        w = self.field.array(w)
        if w.shape[-1] != self.t:
            raise DimensionMismatch(f"message length {w.shape[-1]} != code dimension {self.t}")
        return w @ self.generator

    def project(self, w, j: int) -> galois.FieldArray:
        """Coordinate j of the codeword of ``w``."""
        return self.field.array(w) @ self.column(j)


@dataclass(eq=False)
class MessageSet:
    """
    The K messages, K x L symbols.

    Sub-message ``(k, m)`` is symbols ``[m*T, (m+1)*T)`` of message k. Sub-messages with
    ``m >= M`` are the all-zero pseudo messages and are never stored.
    """

    params: SystemParams
    field: FieldSpec
    symbols: galois.FieldArray

    def __post_init__(self):
        self.field.check(self.symbols)
        expected = (self.params.k, self.params.l)
        if self.symbols.shape != expected:
            raise DimensionMismatch(f"message grid shape {self.symbols.shape} != {expected}")

    @classmethod
    def random(cls, params: SystemParams, field: FieldSpec, rng: np.random.Generator):
        return cls(params, field, field.random((params.k, params.l), rng))

    @classmethod
    def zeros(cls, params: SystemParams, field: FieldSpec):
        return cls(params, field, field.zeros((params.k, params.l)))

    @classmethod
    def from_flat(cls, params: SystemParams, field: FieldSpec, flat):
        """Inverse of ``flat``: message k occupies positions [k*L, (k+1)*L)."""
        flat = field.array(flat)
        if flat.shape != (params.k * params.l,):
            raise DimensionMismatch(f"flat message length {flat.shape} != {params.k * params.l}")
        return cls(params, field, flat.reshape(params.k, params.l))

    @classmethod
    def unit(cls, params: SystemParams, field: FieldSpec, position: int):
        """Message set with a single one at flat ``position`` (probe for linear maps)."""
        flat = np.zeros(params.k * params.l, dtype=np.int64)
        flat[position] = 1
        return cls.from_flat(params, field, flat)

    def message(self, k: int) -> galois.FieldArray:
        return self.symbols[k]

    def sub_message(self, k: int, m: int) -> galois.FieldArray:
        """W^{k,m}, length T; zero for pseudo indices m >= M."""
        t = self.params.t
        if m >= self.params.m:
            return self.field.zeros(t)
        return self.symbols[k, m * t : (m + 1) * t]

    def matrix(self, k: int) -> galois.FieldArray:
        """Message k viewed as an M x T matrix (rows are sub-messages)."""
        return self.symbols[k].reshape(self.params.m, self.params.t)

    def flat(self) -> galois.FieldArray:
        return self.symbols.reshape(-1)

    def __add__(self, other: "MessageSet") -> "MessageSet":
        return MessageSet(self.params, self.field, self.symbols + other.symbols)


@dataclass(eq=False)
class Shard:
    """Stored content V_n of database ``db_index``: cell (k, m) = W^{k,m} . G*_n."""

    db_index: int
    cells: galois.FieldArray

    def cell(self, k: int, j: int):
        """V^{k,j}_n; the pseudo symbols j >= M are zero."""
        if j >= self.cells.shape[1]:
            return type(self.cells)(0)
        return self.cells[k, j]

    def padded(self, width: int) -> galois.FieldArray:
        """K x width grid whose columns beyond M hold the zero pseudo symbols."""
        k, m = self.cells.shape
        if width <= m:
            return self.cells[:, :width]
        raw = np.zeros((k, width), dtype=np.int64)
        raw[:, :m] = self.cells.view(np.ndarray)
        return type(self.cells)(raw)


def build_vandermonde(t: int, n: int, field: FieldSpec, systematic: bool = False) -> MdsCode:
    """
    Vandermonde (n, t) MDS code: column j is (1, a_j, a_j^2, ..., a_j^(t-1)).

    Evaluation points are the elements 1..n, or 0..n-1 when n equals the field order.
    With ``systematic`` the generator is normalized so its first t columns are the identity.

    Raises:
        FieldTooSmall: if the field has fewer than n elements
    """
    if t <= 0 or n < t:
        raise DimensionMismatch(f"need 0 < t <= n, got t={t}, n={n}")
    if field.order < n:
        raise FieldTooSmall(f"{field.name} has {field.order} elements, need at least {n}")

    points = range(1, n + 1) if n < field.order else range(n)
    alphas = field.array(list(points))

    rows = [field.gf.Ones(n)]
    for _ in range(1, t):
        rows.append(rows[-1] * alphas)
    generator = field.stack_rows(rows, n)

    if systematic:
        generator = np.linalg.inv(generator[:, :t]) @ generator

    kind = "systematic Vandermonde" if systematic else "Vandermonde"
    logger.debug(f"Built {kind} ({n},{t}) code over {field.name}")
    return MdsCode(t=t, n=n, generator=generator, field=field)


def encode_storage(code: MdsCode, msgs: MessageSet) -> list[Shard]:
    """
    Encode every sub-message with the base code and place coordinate n at database n.

    Messages are never mixed: shard cell (k, m) depends on W^{k,m} only.

    Raises:
        DimensionMismatch: if the code does not match the message parameters
    """
    params = msgs.params
    if (code.t, code.n) != (params.t, params.n):
        raise DimensionMismatch(
            f"code (n,t)=({code.n},{code.t}) does not match params (n,t)=({params.n},{params.t})"
        )
    if code.field != msgs.field:
        raise FieldMismatch(f"code over {code.field.name}, messages over {msgs.field.name}")

    sub_messages = msgs.symbols.reshape(params.k * params.m, params.t)
    coded = (sub_messages @ code.generator).reshape(params.k, params.m, params.n)
    return [Shard(db_index=n, cells=coded[:, :, n]) for n in range(params.n)]


def decode_any_t(code: MdsCode, points: Iterable[tuple[int, object]]) -> galois.FieldArray:
    """
    Recover the length-t vector w from codeword coordinates ``(index, symbol)``.

    The first t distinct indices (ascending) are solved; any further points are checked for
    consistency against the decoded codeword.

    Raises:
        IndexOutOfRange: for an index outside [0, n)
        InsufficientPoints: with fewer than t distinct indices
        InconsistentPoints: when supplied points disagree
    """
    values: dict[int, int] = {}
    for index, symbol in points:
        index = int(index)
        if not 0 <= index < code.n:
            raise IndexOutOfRange(f"coordinate {index} outside [0, {code.n})")
        value = int(symbol)
        if values.setdefault(index, value) != value:
            raise InconsistentPoints(f"coordinate {index} supplied with two different symbols")

    if len(values) < code.t:
        raise InsufficientPoints(f"need {code.t} distinct coordinates, got {len(values)}")

    indices = sorted(values)
    basis, rest = indices[: code.t], indices[code.t :]

    a = code.generator[:, basis]
    y = code.field.array([values[i] for i in basis])
    w = code.field.solve(a.T, y)

    if rest:
        expected = w @ code.generator[:, rest]
        observed = [values[i] for i in rest]
        if [int(v) for v in expected] != observed:
            raise InconsistentPoints(
                f"coordinates {rest} disagree with the codeword through {basis}"
            )

    return w


def verify_mds(code: MdsCode, cap: int = EXHAUSTIVE_MDS_CAP) -> bool:
    """
    True iff every t x t submatrix of the generator is invertible.

    Raises:
        TooLarge: when n exceeds the exhaustive cap
    """
    if code.n > cap:
        raise TooLarge(f"exhaustive minor check limited to n <= {cap}, got n={code.n}")

    for columns in combinations(range(code.n), code.t):
        if code.field.rank(code.generator[:, list(columns)]) < code.t:
            logger.debug(f"Singular minor at columns {columns}")
            return False
    return True
