# tasks/validation.py
"""Field validators shared by the task contexts. Each raises ValueError naming the field."""

from ..field import field_for_order
from ..params import SchemeTag, SystemParams, auto_scheme, derive

VALID_SCHEMES = ["a", "b", "k2", "auto"]
VALID_MODES = ["in-process", "wire"]
VALID_FORMATS = ["json", "csv"]


def validate_choice(name: str, value: str, valid: list[str]) -> None:
    """
    Raises:
        ValueError: If value is not one of the valid options
    """
    if value not in valid:
        raise ValueError(f"{name} must be one of {valid}, got '{value}'")


def validate_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def validate_non_negative(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {value!r}")


def resolve_params(n: int, t: int, k: int, scheme: str, field_order: int) -> SystemParams:
    """
    Derive parameters, turning "auto" into A for r = 1 and B otherwise.

    Raises:
        InvalidParams: if (n, t, k, q) or the scheme constraints are violated, or q is neither
            a prime nor a power of two
    """
    tag = auto_scheme(n, t) if scheme == "auto" else SchemeTag(scheme)
    params = derive(n, t, k, field_order, tag)
    field_for_order(params.q)
    return params
