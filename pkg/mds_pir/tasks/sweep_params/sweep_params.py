# tasks/sweep_params/sweep_params.py

from concurrent.futures import ProcessPoolExecutor, as_completed
import logging
from typing import Iterator

import numpy as np
import pandas as pd
from tqdm import tqdm

from mds_pir.analysis import run_suite
from mds_pir.params import SchemeTag, derive
from mds_pir.schemes import build_scheme

from .types import SweepParamsContext, SweepPoint

logger = logging.getLogger(__name__)

_SCHEME_SEEDS = {SchemeTag.A: 0, SchemeTag.B: 1, SchemeTag.K2: 2}


# ============================================================================
# Helper functions
# ============================================================================


def sweep_points(ctx: SweepParamsContext) -> Iterator[SweepPoint]:
    """
    Yield the grid in (N, T, K) order.

    Every (N, T, K) gets both Construction-A and Construction-B; with ``include_k2`` the K=2
    scheme follows wherever K = 2 and 2T >= N.
    """
    for n in range(ctx.min_n, ctx.max_n + 1):
        for t in range(1, n):
            for k in range(ctx.min_k, ctx.max_k + 1):
                yield SweepPoint(n, t, k, SchemeTag.A)
                yield SweepPoint(n, t, k, SchemeTag.B)
                if ctx.include_k2 and k == 2 and 2 * t >= n:
                    yield SweepPoint(n, t, k, SchemeTag.K2)


def _verify_point(point: SweepPoint, claims: list[str], field_order: int, seed: int) -> list[dict]:
    """Run the claim checks at one point; top level so worker processes can pickle it."""
    params = derive(point.n, point.t, point.k, field_order, point.scheme)
    scheme = build_scheme(params)
    rng = np.random.default_rng([seed, point.n, point.t, point.k, _SCHEME_SEEDS[point.scheme]])
    reports = run_suite(scheme, rng, claims=claims)
    return [report.as_dict() for report in reports]


def summarize_sweep(records: list[dict]) -> pd.DataFrame:
    """
    Per-claim totals over the sweep.

    Returns:
        DataFrame with columns claim, points, passed, failed and total_ms, in claim order
    """
    if not records:
        return pd.DataFrame(columns=["claim", "points", "passed", "failed", "total_ms"])

    df = pd.DataFrame(
        {
            "claim": [record["claim"] for record in records],
            "pass": [record["pass"] for record in records],
            "ms": [record["ms"] for record in records],
        }
    )
    summary = (
        df.groupby("claim", sort=False)
        .agg(points=("pass", "size"), passed=("pass", "sum"), total_ms=("ms", "sum"))
        .reset_index()
    )
    summary["failed"] = summary["points"] - summary["passed"]
    return summary[["claim", "points", "passed", "failed", "total_ms"]]


# ============================================================================
# Main public function
# ============================================================================


def sweep_params(ctx: SweepParamsContext) -> list[dict]:
    """
    Verify the selected claims at every grid point, in parallel when ``workers`` > 1.

    Each point draws from its own generator seeded by (seed, N, T, K, scheme), so the outcome
    does not depend on the worker count.

    Args:
        ctx: SweepParamsContext with ranges and claims

    Returns:
        Report records of every point, in grid order
    """
    points = list(sweep_points(ctx))
    logger.info("=" * 60)
    logger.info(
        f"Sweeping {len(points)} points: N in [{ctx.min_n}, {ctx.max_n}], "
        f"K in [{ctx.min_k}, {ctx.max_k}], claims {ctx.claims}"
    )
    logger.info("=" * 60)

    results: dict[SweepPoint, list[dict]] = {}
    if ctx.workers == 1:
        for point in tqdm(points, desc="sweep", leave=False, disable=None):
            results[point] = _verify_point(point, ctx.claims, ctx.field_order, ctx.seed)
    else:
        with ProcessPoolExecutor(max_workers=ctx.workers) as pool:
            futures = {
                pool.submit(_verify_point, point, ctx.claims, ctx.field_order, ctx.seed): point
                for point in points
            }
            for future in tqdm(
                as_completed(futures), total=len(futures), desc="sweep", leave=False, disable=None
            ):
                results[futures[future]] = future.result()

    records = [record for point in points for record in results[point]]

    summary = summarize_sweep(records)
    for row in summary.itertuples(index=False):
        status = "✓" if row.failed == 0 else "✗"
        logger.info(f"{status} {row.claim}: {row.passed}/{row.points} points pass")

    failed_points = [
        point.label() for point in points if not all(r["pass"] for r in results[point])
    ]
    if failed_points:
        logger.error(f"Points with failed claims: {', '.join(failed_points)}")
    return records
