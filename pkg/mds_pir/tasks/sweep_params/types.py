# tasks/sweep_params/types.py

from dataclasses import dataclass, field

from mds_pir.analysis import CLAIMS
from mds_pir.config import DEFAULT_FIELD_ORDER
from mds_pir.field import field_for_order
from mds_pir.params import SchemeTag

from ..validation import VALID_FORMATS, validate_choice, validate_non_negative, validate_positive

# Checks whose cost stays in the milliseconds at every grid point
DEFAULT_SWEEP_CLAIMS = ["message_size", "privacy", "decoding_sets", "rate", "upload"]


@dataclass(frozen=True)
class SweepPoint:
    """One (N, T, K, scheme) grid point."""

    n: int
    t: int
    k: int
    scheme: SchemeTag

    def label(self) -> str:
        return f"{self.scheme.value}({self.n},{self.t},{self.k})"


@dataclass
class SweepParamsContext:
    """Context for sweeping claim checks over a grid of parameter points."""

    min_n: int = 2
    max_n: int = 8
    min_k: int = 1
    max_k: int = 4
    include_k2: bool = True  # add the K=2 scheme at every (N, T) with 2T >= N
    claims: list[str] = field(default_factory=lambda: list(DEFAULT_SWEEP_CLAIMS))
    field_order: int = DEFAULT_FIELD_ORDER
    seed: int = 0
    workers: int = 1  # worker processes; 1 runs every point inline
    output: str = "-"
    report_format: str = "json"

    def __post_init__(self):
        self._validate_ranges()
        validate_positive("workers", self.workers)
        validate_non_negative("seed", self.seed)
        validate_choice("format", self.report_format, VALID_FORMATS)
        self._validate_claims()

        if self.field_order < self.max_n:
            raise ValueError(
                f"field_order={self.field_order} is smaller than max_n={self.max_n}; "
                f"an MDS generator needs at least N field elements"
            )
        field_for_order(self.field_order)

    def _validate_ranges(self) -> None:
        """
        Raises:
            ValueError: If a bound is not a positive integer or a range is empty
        """
        for name in ["min_n", "max_n", "min_k", "max_k"]:
            validate_positive(name, getattr(self, name))
        if self.min_n < 2:
            raise ValueError(f"min_n must be at least 2 so that 0 < t < n, got {self.min_n}")
        if self.min_n > self.max_n:
            raise ValueError(f"empty N range: min_n={self.min_n} > max_n={self.max_n}")
        if self.min_k > self.max_k:
            raise ValueError(f"empty K range: min_k={self.min_k} > max_k={self.max_k}")

    def _validate_claims(self) -> None:
        if not self.claims:
            raise ValueError("claims must name at least one claim")
        unknown = [name for name in self.claims if name not in CLAIMS]
        if unknown:
            raise ValueError(f"unknown claims {unknown}; valid claims are {list(CLAIMS)}")
