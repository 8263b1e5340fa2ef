# mds_pir/field.py
"""
Finite-field arithmetic for the symbol alphabet.

Fields are GF(2^w) (binary extension, given by an irreducible polynomial bitmask) or a small
prime field GF(p). Arithmetic and linear algebra are delegated to ``galois`` arrays, which use
log/antilog lookup tables for fields of this size. Symbols are 0-d field arrays; matrices and
vectors are 1-d/2-d field arrays of the owning field.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import logging
from typing import Iterable, Sequence

import galois
import numpy as np

from .errors import DimensionMismatch, DivideByZero, FieldMismatch, InvalidParams, SingularMatrix

logger = logging.getLogger(__name__)

# x^8 + x^4 + x^3 + x^2 + 1, the polynomial used by most Reed-Solomon implementations
GF256_POLY = 0x11D
MAX_PRIME_ORDER = 2**16
MAX_BINARY_DEGREE = 16

DEFAULT_BINARY_POLYS = {8: GF256_POLY}


class FieldKind(str, Enum):
    BINARY_EXTENSION = "binary-extension"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldSpec:
    """The alphabet X: order, kind and (for GF(2^w)) the irreducible polynomial bitmask."""

    order: int
    kind: FieldKind
    poly: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.BINARY_EXTENSION:
            _validate_binary(self.order, self.poly)
        else:
            _validate_prime(self.order)

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        """The galois field class backing this spec (lookup tables built on first use)."""
        if self.kind is FieldKind.BINARY_EXTENSION:
            gf = galois.GF(self.order, irreducible_poly=self.poly)
        else:
            gf = galois.GF(self.order)
        logger.debug(f"Built field class {gf.name}")
        return gf

    @property
    def symbol_width(self) -> int:
        """Bytes per symbol on the wire."""
        return max(1, ((self.order - 1).bit_length() + 7) // 8)

    @property
    def name(self) -> str:
        if self.kind is FieldKind.BINARY_EXTENSION:
            return f"GF(2^{self.order.bit_length() - 1}, poly={self.poly:#x})"
        return f"GF({self.order})"

    # ------------------------------------------------------------------
    # Scalars
    # ------------------------------------------------------------------

    def symbol(self, value) -> galois.FieldArray:
        """Coerce an int or same-field scalar into a symbol of this field."""
        if isinstance(value, galois.FieldArray):
            if type(value) is not self.gf:
                raise FieldMismatch(f"symbol from {type(value).name} used in {self.name}")
            return value
        value = int(value)
        if not 0 <= value < self.order:
            raise InvalidParams(f"symbol value {value} outside [0, {self.order}) of {self.name}")
        return self.gf(value)

    def add(self, a, b) -> galois.FieldArray:
        return self.symbol(a) + self.symbol(b)

    def sub(self, a, b) -> galois.FieldArray:
        return self.symbol(a) - self.symbol(b)

    def mul(self, a, b) -> galois.FieldArray:
        return self.symbol(a) * self.symbol(b)

    def inv(self, a) -> galois.FieldArray:
        a = self.symbol(a)
        if int(a) == 0:
            raise DivideByZero(f"zero has no inverse in {self.name}")
        return np.reciprocal(a)

    # ------------------------------------------------------------------
    # Vectors and matrices
    # ------------------------------------------------------------------

    def array(self, values) -> galois.FieldArray:
        """Field array from ints (or a same-field array, returned unchanged)."""
        if isinstance(values, galois.FieldArray):
            self.check(values)
            return values
        return self.gf(np.asarray(values, dtype=np.int64))

    def zeros(self, shape) -> galois.FieldArray:
        return self.gf.Zeros(shape)

    def identity(self, size: int) -> galois.FieldArray:
        return self.gf.Identity(size)

    def random(self, shape, rng: np.random.Generator) -> galois.FieldArray:
        """Uniform random field array drawn from ``rng``."""
        return self.gf(rng.integers(0, self.order, size=shape, dtype=np.int64))

    def check(self, arr) -> None:
        if not isinstance(arr, galois.FieldArray) or type(arr) is not self.gf:
            other = type(arr).name if isinstance(arr, galois.FieldArray) else type(arr).__name__
            raise FieldMismatch(f"array over {other} used in {self.name}")

    def stack_rows(self, blocks: Iterable, cols: int) -> galois.FieldArray:
        """Vertically stack 2-d blocks with ``cols`` columns; no blocks give a 0 x cols matrix."""
        raw = [
            np.asarray(block.view(np.ndarray), dtype=np.int64).reshape(-1, cols)
            for block in blocks
        ]
        if not raw:
            return self.gf.Zeros((0, cols))
        return self.gf(np.concatenate(raw, axis=0))

    def rank(self, m) -> int:
        """Row rank by Gaussian elimination over the field; empty and zero matrices have rank 0."""
        m = self.array(m)
        if m.ndim != 2:
            raise DimensionMismatch(f"rank needs a 2-d matrix, got shape {m.shape}")
        if m.size == 0 or not m.view(np.ndarray).any():
            return 0
        return int(np.linalg.matrix_rank(m))

    def solve(self, a, y) -> galois.FieldArray:
        """
        Solve a @ x = y for square invertible ``a``.

        Raises:
            DimensionMismatch: if a is not square or y has the wrong length
            SingularMatrix: if a is not invertible
        """
        a = self.array(a)
        y = self.array(y)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"solve needs a square matrix, got shape {a.shape}")
        if y.shape[0] != a.shape[0]:
            raise DimensionMismatch(f"right-hand side length {y.shape[0]} != {a.shape[0]}")
        if self.rank(a) < a.shape[0]:
            raise SingularMatrix(f"{a.shape[0]}x{a.shape[0]} matrix over {self.name} is singular")
        return np.linalg.solve(a, y)


def binary_field(degree: int, poly: int | None = None) -> FieldSpec:
    """GF(2^degree); GF(256) defaults to x^8+x^4+x^3+x^2+1, other degrees to galois' default."""
    if poly is None:
        poly = DEFAULT_BINARY_POLYS.get(degree)
    if poly is None:
        poly = int(galois.GF(2**degree).irreducible_poly)
    return FieldSpec(order=2**degree, kind=FieldKind.BINARY_EXTENSION, poly=poly)


def prime_field(order: int) -> FieldSpec:
    return FieldSpec(order=order, kind=FieldKind.PRIME)


def field_for_order(order: int) -> FieldSpec:
    """
    Field spec for a caller-supplied order q: GF(2^w) for powers of two, GF(p) for primes.

    Raises:
        InvalidParams: if q is neither, or outside the supported range
    """
    if order > 2 and order & (order - 1) == 0:
        return binary_field(order.bit_length() - 1)
    if galois.is_prime(order):
        return prime_field(order)
    raise InvalidParams(f"field order {order} must be a power of two or a prime")


def inner(field: FieldSpec, a: Sequence, b: Sequence) -> galois.FieldArray:
    """Inner product of two same-length field vectors."""
    a = field.array(a)
    b = field.array(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"inner product of shapes {a.shape} and {b.shape}")
    return np.add.reduce(a * b)


def _validate_binary(order: int, poly: int | None) -> None:
    """
    Validate GF(2^w) parameters.

    Raises:
        InvalidParams: if the order is not 2^w with 1 <= w <= 16, or poly is not irreducible
            of degree w
    """
    if order < 4 or order & (order - 1) != 0:
        raise InvalidParams(f"binary extension field order must be a power of two, got {order}")
    degree = order.bit_length() - 1
    if degree > MAX_BINARY_DEGREE:
        raise InvalidParams(f"binary extension degree {degree} exceeds {MAX_BINARY_DEGREE}")
    if poly is None:
        raise InvalidParams(f"GF(2^{degree}) needs an irreducible polynomial bitmask")
    candidate = galois.Poly.Int(poly)
    if candidate.degree != degree or not candidate.is_irreducible():
        raise InvalidParams(f"polynomial {poly:#x} is not irreducible of degree {degree}")


def _validate_prime(order: int) -> None:
    if order >= MAX_PRIME_ORDER:
        raise InvalidParams(f"prime fields are supported below {MAX_PRIME_ORDER}, got {order}")
    if not galois.is_prime(order):
        raise InvalidParams(f"prime field order must be prime, got {order}")


def same_symbols(a, b) -> bool:
    """True iff two field arrays hold the same shape and symbols."""
    return np.array_equal(np.asarray(a.view(np.ndarray)), np.asarray(b.view(np.ndarray)))
