# tasks/run_retrievals/__init__.py

from .run_retrievals import run_retrievals
from .types import RunRetrievalsContext

__all__ = [
    "run_retrievals",
    "RunRetrievalsContext",
]
