# tasks/verify_claims/types.py

from dataclasses import dataclass, field

from mds_pir.analysis import CLAIMS
from mds_pir.config import DEFAULT_FIELD_ORDER
from mds_pir.params import SystemParams

from ..validation import (
    VALID_FORMATS,
    VALID_SCHEMES,
    resolve_params,
    validate_choice,
    validate_non_negative,
    validate_positive,
)


@dataclass
class VerifyClaimsContext:
    """Context for verifying every claim at one parameter point."""

    n: int
    t: int
    k: int
    scheme: str = "auto"
    field_order: int = DEFAULT_FIELD_ORDER
    seed: int = 0
    structure_samples: int = 200  # P0/P1 enumerate when there are at most this many realizations
    auxiliary: bool = False
    claims: list[str] = field(default_factory=lambda: list(CLAIMS))
    output: str = "-"
    report_format: str = "json"

    def __post_init__(self):
        validate_choice("scheme", self.scheme, VALID_SCHEMES)
        validate_choice("format", self.report_format, VALID_FORMATS)
        validate_positive("structure_samples", self.structure_samples)
        validate_non_negative("seed", self.seed)
        _validate_claims(self.claims)

        self._params = resolve_params(self.n, self.t, self.k, self.scheme, self.field_order)

    @property
    def params(self) -> SystemParams:
        return self._params


def _validate_claims(claims: list[str]) -> None:
    """
    Raises:
        ValueError: If a claim name is unknown or the list is empty
    """
    if not claims:
        raise ValueError("claims must name at least one claim")
    unknown = [name for name in claims if name not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claims {unknown}; valid claims are {list(CLAIMS)}")
