# schemes/base.py
"""
Interface shared by every retrieval scheme, plus the key and interference-cancellation helpers
that Construction-A and both regimes of Construction-B have in common.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import logging
from math import log2
from typing import Any, Iterator, Sequence

import galois
import numpy as np

from ..errors import DimensionMismatch, IndexOutOfRange, MalformedFrame, MalformedTranscript
from ..field import FieldSpec
from ..mds import MdsCode, Shard, decode_any_t
from ..params import SystemParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RandomKey:
    """Key F: K entries over {0..r+s-1} whose sum is 0 mod r+s."""

    f: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if any(not 0 <= entry < self.modulus for entry in self.f):
            raise ValueError(f"key entries must lie in [0, {self.modulus}), got {self.f}")
        if sum(self.f) % self.modulus != 0:
            raise ValueError(f"key entries must sum to 0 mod {self.modulus}, got {self.f}")


@dataclass(frozen=True)
class Answer:
    """Answer symbols and the intermediate positions they were taken from (ascending)."""

    symbols: galois.FieldArray
    kept: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) != len(self.kept):
            raise MalformedTranscript(
                f"answer carries {len(self.symbols)} symbols for {len(self.kept)} kept positions"
            )

    def __len__(self) -> int:
        return len(self.kept)

    def expand(self, width: int) -> list[int]:
        """Intermediate answer of length ``width`` with zeros at skipped positions."""
        full = [0] * width
        for position, symbol in zip(self.kept, self.symbols):
            full[position] = int(symbol)
        return full


@dataclass
class DecodingSets:
    """Set sizes that reconstruction relies on, for one (k*, key)."""

    sizes: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def expect(self, name: str, size: int, expected: int) -> None:
        self.sizes[name] = size
        if size != expected:
            self.violations.append(f"|{name}| = {size}, expected {expected}")


class PirScheme(ABC):
    """
    One retrieval scheme bound to its parameters and base code.

    ``key`` is the user's private randomness realization: a RandomKey for A and B, a
    partition for the K=2 scheme. Queries are transmitted as ``encode_query`` bytes.
    """

    tag: str = ""

    def __init__(self, params: SystemParams, code: MdsCode):
        if (code.t, code.n) != (params.t, params.n):
            raise DimensionMismatch(
                f"code (n,t)=({code.n},{code.t}) does not match "
                f"params (n,t)=({params.n},{params.t})"
            )
        self.params = params
        self.code = code

    @property
    def field(self) -> FieldSpec:
        return self.code.field

    @property
    def name(self) -> str:
        return self.tag

    # --- randomness -------------------------------------------------------

    @abstractmethod
    def sample_key(self, rng: np.random.Generator) -> Any: ...

    @abstractmethod
    def key_space(self) -> Iterator[tuple[Any, Fraction]]:
        """Every key with its exact probability."""

    @abstractmethod
    def key_space_size(self) -> int: ...

    # --- protocol ---------------------------------------------------------

    @abstractmethod
    def queries(self, k_star: int, key: Any) -> list[Any]:
        """Queries for databases 0..N-1."""

    @abstractmethod
    def kept_positions(self, query: Any) -> tuple[int, ...]:
        """Intermediate-answer positions a query's answer carries, computed without data."""

    def answer_length(self, query: Any) -> int:
        return len(self.kept_positions(query))

    @abstractmethod
    def answer(self, shard: Shard, query: Any) -> Answer: ...

    @abstractmethod
    def reconstruct(self, answers: Sequence[Answer], k_star: int, key: Any) -> galois.FieldArray:
        """Length-L message k* from all N answers."""

    @abstractmethod
    def decoding_sets(self, k_star: int, key: Any) -> DecodingSets: ...

    # --- wire -------------------------------------------------------------

    @abstractmethod
    def encode_query(self, query: Any) -> bytes: ...

    @abstractmethod
    def decode_query(self, payload: bytes, db_index: int) -> Any: ...

    def encode_answer(self, answer: Answer) -> bytes:
        width = self.field.symbol_width
        return b"".join(int(symbol).to_bytes(width, "big") for symbol in answer.symbols)

    def decode_answer(self, payload: bytes, query: Any) -> Answer:
        """Rebuild an Answer from its symbol bytes; kept positions come from the query."""
        width = self.field.symbol_width
        kept = self.kept_positions(query)
        if len(payload) != width * len(kept):
            raise MalformedFrame(
                f"answer payload of {len(payload)} bytes, "
                f"expected {len(kept)} symbols of {width} bytes"
            )
        values = [
            int.from_bytes(payload[j : j + width], "big") for j in range(0, len(payload), width)
        ]
        if any(value >= self.field.order for value in values):
            raise MalformedFrame(f"answer symbol outside {self.field.name}")
        return Answer(symbols=self.field.array(values), kept=kept)

    # --- costs ------------------------------------------------------------

    @abstractmethod
    def upload_cost_bits(self) -> float:
        """Closed-form upload cost for this scheme."""

    @abstractmethod
    def expected_download_formula(self) -> Fraction:
        """Closed-form expected total download in symbols."""

    @abstractmethod
    def target_message_size(self) -> int: ...

    def check_k_star(self, k_star: int) -> None:
        if not 0 <= k_star < self.params.k:
            raise IndexOutOfRange(f"k* = {k_star} outside [0, {self.params.k})")

    def check_db_index(self, n: int) -> None:
        if not 0 <= n < self.params.n:
            raise IndexOutOfRange(f"database index {n} outside [0, {self.params.n})")


# ============================================================================
# Keys and auxiliary queries (shared by Construction-A and Construction-B)
# ============================================================================


def sample_key(params: SystemParams, rng: np.random.Generator) -> RandomKey:
    """Uniform key: K-1 free entries, the last completes the sum to 0 mod r+s."""
    modulus = params.key_modulus
    head = [int(x) for x in rng.integers(0, modulus, size=params.k - 1)]
    last = (-sum(head)) % modulus
    return RandomKey(f=tuple(head + [last]), modulus=modulus)


def iter_keys(params: SystemParams) -> Iterator[RandomKey]:
    """All (r+s)^(K-1) keys in lexicographic order of the free entries."""
    modulus = params.key_modulus
    for head in product(range(modulus), repeat=params.k - 1):
        yield RandomKey(f=tuple(head) + ((-sum(head)) % modulus,), modulus=modulus)


def key_space_size(params: SystemParams) -> int:
    return params.key_modulus ** (params.k - 1)


def aux_query(params: SystemParams, k_star: int, key: RandomKey, n: int) -> tuple[int, ...]:
    """The key with entry k* shifted by n mod r+s; entries sum to n mod r+s."""
    if not 0 <= k_star < params.k:
        raise IndexOutOfRange(f"k* = {k_star} outside [0, {params.k})")
    if not 0 <= n < params.n:
        raise IndexOutOfRange(f"database index {n} outside [0, {params.n})")
    entries = list(key.f)
    entries[k_star] = (entries[k_star] + n) % params.key_modulus
    return tuple(entries)


def encode_entries(entries: Sequence[int]) -> bytes:
    return bytes(entries)


def decode_entries(payload: bytes, k: int, alphabet: int) -> tuple[int, ...]:
    if len(payload) != k:
        raise MalformedFrame(f"query payload of {len(payload)} bytes, expected {k}")
    entries = tuple(payload)
    if any(entry >= alphabet for entry in entries):
        raise MalformedFrame(f"query entry outside alphabet [0, {alphabet}): {entries}")
    return entries


def key_upload_bits(params: SystemParams) -> float:
    """N(K-1) log2(r+s): sending the shifted key itself."""
    return params.n * (params.k - 1) * log2(params.key_modulus)


# ============================================================================
# Interference cancellation (Construction-A and low-rate Construction-B)
# ============================================================================


def interference_sets(
    desired_rows: Sequence[Sequence[int]], r: int, s: int
) -> tuple[list[list[int]], list[list[int]]]:
    """
    Interference sets T_i and usable sets N_m from the desired message's grid rows.

    Args:
        desired_rows: per database n, the s grid entries of row k*
        r: pseudo threshold (entries >= r index zero pseudo symbols)
        s: number of intermediate answer components

    Returns:
        (T, N): T[i] lists databases whose component i carries no desired symbol, N[m] lists
        databases exposing sub-message m of the desired message
    """
    interference = [[] for _ in range(s)]
    usable = [[] for _ in range(r)]
    for n, row in enumerate(desired_rows):
        for i in range(s):
            if row[i] >= r:
                interference[i].append(n)
            else:
                usable[row[i]].append(n)
    return interference, usable


def cancel_interference(
    code: MdsCode,
    intermediate: Sequence[Sequence[int]],
    desired_rows: Sequence[Sequence[int]],
    r: int,
    s: int,
) -> galois.FieldArray:
    """
    Decode the desired message from intermediate answers.

    Per component i, the T databases in T_i hold a codeword of the summed interference; it is
    decoded and subtracted everywhere else, exposing W^{k*,m} . G*_n with m the grid entry.
    Exposures are pooled by m and each sub-message decoded from its T coordinates.

    Raises:
        MalformedTranscript: when a set does not hold exactly T databases
    """
    t = code.t
    field = code.field
    interference, _ = interference_sets(desired_rows, r, s)
    exposures: list[list[tuple[int, object]]] = [[] for _ in range(r)]

    for i in range(s):
        if len(interference[i]) != t:
            raise MalformedTranscript(f"|T_{i}| = {len(interference[i])}, expected {t}")
        summed = decode_any_t(code, [(n, intermediate[n][i]) for n in interference[i]])

        for n, row in enumerate(desired_rows):
            if row[i] >= r:
                continue
            exposure = field.symbol(intermediate[n][i]) - code.project(summed, n)
            exposures[row[i]].append((n, exposure))

    sub_messages = []
    for m in range(r):
        databases = {n for n, _ in exposures[m]}
        if len(exposures[m]) != t or len(databases) != t:
            raise MalformedTranscript(f"|N_{m}| = {len(databases)}, expected {t}")
        sub_messages.append(decode_any_t(code, exposures[m]))

    return field.stack_rows([w.reshape(1, -1) for w in sub_messages], t).reshape(-1)
