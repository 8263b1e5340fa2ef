# tasks/run_retrievals/types.py

from dataclasses import dataclass
from pathlib import Path

from mds_pir.config import DEFAULT_FIELD_ORDER
from mds_pir.params import SystemParams

from ..validation import (
    VALID_FORMATS,
    VALID_MODES,
    VALID_SCHEMES,
    resolve_params,
    validate_choice,
    validate_non_negative,
    validate_positive,
)


@dataclass
class RunRetrievalsContext:
    """Context for running end-to-end retrievals against a simulated cluster."""

    n: int
    t: int
    k: int
    scheme: str = "auto"  # "a", "b", "k2" or "auto"
    field_order: int = DEFAULT_FIELD_ORDER
    seed: int = 0
    trials: int = 100
    mode: str = "in-process"  # "in-process" or "wire"
    exhaustive: bool = False  # every key and requested message instead of random trials
    auxiliary: bool = False  # Construction-B only: send unclamped queries
    output: str = "-"  # report path, "-" for stdout
    report_format: str = "json"
    transcripts: str | None = None  # optional JSON file for the full transcripts

    def __post_init__(self):
        validate_choice("scheme", self.scheme, VALID_SCHEMES)
        validate_choice("mode", self.mode, VALID_MODES)
        validate_choice("format", self.report_format, VALID_FORMATS)
        validate_positive("trials", self.trials)
        validate_non_negative("seed", self.seed)

        # Derive once so invalid parameter points fail at construction
        self._params = resolve_params(self.n, self.t, self.k, self.scheme, self.field_order)

    @property
    def params(self) -> SystemParams:
        return self._params

    @property
    def transcripts_path(self) -> Path | None:
        return Path(self.transcripts) if self.transcripts else None
