# tasks/verify_claims/__init__.py

from .types import VerifyClaimsContext
from .verify_claims import verify_claims

__all__ = [
    "verify_claims",
    "VerifyClaimsContext",
]
