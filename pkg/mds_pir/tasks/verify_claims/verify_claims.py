# tasks/verify_claims/verify_claims.py

import logging

import numpy as np

from mds_pir.analysis import VerificationReport, run_suite
from mds_pir.schemes import build_scheme

from .types import VerifyClaimsContext

logger = logging.getLogger(__name__)


def verify_claims(ctx: VerifyClaimsContext) -> list[VerificationReport]:
    """
    Run the selected claim checks at the context's parameter point.

    P0/P1 enumerate every query realization when there are at most ``structure_samples`` of
    them and sample that many otherwise.

    Args:
        ctx: VerifyClaimsContext

    Returns:
        list[VerificationReport]
    """
    scheme = build_scheme(ctx.params, auxiliary=ctx.auxiliary)
    rng = np.random.default_rng(ctx.seed)

    realizations = scheme.key_space_size() * ctx.params.k
    samples = None if realizations <= ctx.structure_samples else ctx.structure_samples
    if samples is not None:
        logger.info(f"Sampling {samples} of {realizations} query realizations for P0/P1")

    reports = run_suite(scheme, rng, structure_samples=samples, claims=ctx.claims)

    passed = sum(report.passed for report in reports)
    logger.info(f"{passed}/{len(reports)} reports passed")
    return reports
