# analysis/suite.py

import logging
from typing import Callable, Sequence

import numpy as np

from ..schemes import PirScheme, SchemeB
from .claims import (
    verify_compression,
    verify_correctness,
    verify_decoding_sets,
    verify_mds,
    verify_message_size,
    verify_privacy,
    verify_rate,
    verify_upload,
)
from .report import VerificationReport
from .structure import verify_structure

logger = logging.getLogger(__name__)

ClaimCheck = Callable[
    [PirScheme, np.random.Generator, int | None, int | None], list[VerificationReport]
]

# Every check takes (scheme, rng, structure_samples, cap) and returns its reports.
CLAIMS: dict[str, ClaimCheck] = {
    "message_size": lambda scheme, rng, samples, cap: [verify_message_size(scheme)],
    "mds": lambda scheme, rng, samples, cap: [verify_mds(scheme)],
    "privacy": lambda scheme, rng, samples, cap: [verify_privacy(scheme, cap)],
    "decoding_sets": lambda scheme, rng, samples, cap: [verify_decoding_sets(scheme, cap)],
    "rate": lambda scheme, rng, samples, cap: [verify_rate(scheme, cap)],
    "upload": lambda scheme, rng, samples, cap: [verify_upload(scheme, cap)],
    "correctness": lambda scheme, rng, samples, cap: [verify_correctness(scheme, rng, cap)],
    "compression": lambda scheme, rng, samples, cap: (
        [verify_compression(scheme, rng, cap)] if isinstance(scheme, SchemeB) else []
    ),
    "structure": lambda scheme, rng, samples, cap: verify_structure(scheme, rng, samples, cap),
}


def run_suite(
    scheme: PirScheme,
    rng: np.random.Generator,
    structure_samples: int | None = None,
    cap: int | None = None,
    claims: Sequence[str] | None = None,
) -> list[VerificationReport]:
    """
    Run the claim checks that apply to ``scheme``.

    Args:
        scheme: Scheme instance to verify
        rng: Randomness for message sets and sampled realizations
        structure_samples: Number of sampled realizations for P0/P1; None enumerates all
        cap: Enumeration cap (defaults to ENUMERATION_CAP)
        claims: Names from CLAIMS to run, in CLAIMS order; None runs all of them

    Returns:
        list[VerificationReport]

    Raises:
        ValueError: on an unknown claim name
    """
    selected = list(CLAIMS) if claims is None else list(claims)
    unknown = [name for name in selected if name not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claims {unknown}; valid claims are {list(CLAIMS)}")

    params = scheme.params
    logger.info("=" * 60)
    logger.info(f"Verifying scheme {scheme.name} at (N,T,K)=({params.n},{params.t},{params.k})")
    logger.info("=" * 60)

    reports = []
    for name in CLAIMS:
        if name in selected:
            reports += CLAIMS[name](scheme, rng, structure_samples, cap)

    failed = [report.claim for report in reports if not report.passed]
    if failed:
        logger.error(f"Failed claims: {', '.join(failed)}")
    else:
        logger.info(f"✓ All {len(reports)} claims hold")
    return reports
