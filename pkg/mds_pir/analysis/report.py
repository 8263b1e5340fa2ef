# analysis/report.py
"""Verification report record and the helpers every claim check shares."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import wraps
import logging
import time

from ..config import ENUMERATION_CAP
from ..errors import EnumerationTooLarge

logger = logging.getLogger(__name__)


def format_rational(value: Fraction | int) -> str:
    """Exact rational as "num/den" (denominator always shown)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _render(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (int, float)):
        return str(value)
    return value


@dataclass
class VerificationReport:
    """Outcome of one claim check at one parameter point."""

    claim: str
    params: dict
    expected: object
    observed: object
    passed: bool
    enumeration_size: int = 0
    ms: float = 0.0
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        record = {
            "claim": self.claim,
            "params": self.params,
            "expected": _render(self.expected),
            "observed": _render(self.observed),
            "pass": bool(self.passed),
            "enumeration_size": int(self.enumeration_size),
            "ms": round(self.ms, 3),
        }
        if self.details:
            record["details"] = self.details
        return record


def timed(check):
    """Decorator filling ``ms`` of the returned report with the call's wall time."""

    @wraps(check)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = check(*args, **kwargs)
        report.ms = (time.perf_counter() - start) * 1000
        status = "✓" if report.passed else "✗"
        logger.info(
            f"{status} {report.claim}: expected {_render(report.expected)}, "
            f"observed {_render(report.observed)}"
        )
        return report

    return wrapper


def check_enumerable(size: int, cap: int | None = None) -> None:
    """
    Raises:
        EnumerationTooLarge: when ``size`` exceeds the cap
    """
    cap = ENUMERATION_CAP if cap is None else cap
    if size > cap:
        raise EnumerationTooLarge(f"enumeration of {size} keys exceeds the cap of {cap}")
