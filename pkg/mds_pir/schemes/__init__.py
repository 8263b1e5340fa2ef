# schemes/__init__.py

from ..field import FieldSpec, field_for_order
from ..mds import build_vandermonde
from ..params import SchemeTag, SystemParams
from .base import Answer, DecodingSets, PirScheme, RandomKey
from .scheme_a import QueryA, SchemeA
from .scheme_b import PatternMatrix, QueryB, SchemeB, UploadCost
from .scheme_k2 import K2Tag, PartitionK2, QueryK2, SchemeK2, Strategy


def build_scheme(
    params: SystemParams,
    field: FieldSpec | None = None,
    auxiliary: bool = False,
    systematic: bool = False,
) -> PirScheme:
    """Scheme for ``params.scheme`` over a Vandermonde base code in GF(q)."""
    field = field or field_for_order(params.q)
    code = build_vandermonde(params.t, params.n, field, systematic=systematic)
    if params.scheme is SchemeTag.A:
        return SchemeA(params, code)
    if params.scheme is SchemeTag.B:
        return SchemeB(params, code, auxiliary=auxiliary)
    return SchemeK2(params, code)


__all__ = [
    "Answer",
    "DecodingSets",
    "K2Tag",
    "PartitionK2",
    "PatternMatrix",
    "PirScheme",
    "QueryA",
    "QueryB",
    "QueryK2",
    "RandomKey",
    "SchemeA",
    "SchemeB",
    "SchemeK2",
    "Strategy",
    "UploadCost",
    "build_scheme",
]
