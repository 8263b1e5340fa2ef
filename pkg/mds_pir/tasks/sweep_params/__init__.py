# tasks/sweep_params/__init__.py

from .sweep_params import summarize_sweep, sweep_params, sweep_points
from .types import DEFAULT_SWEEP_CLAIMS, SweepParamsContext, SweepPoint

__all__ = [
    "DEFAULT_SWEEP_CLAIMS",
    "summarize_sweep",
    "sweep_params",
    "sweep_points",
    "SweepParamsContext",
    "SweepPoint",
]
