# tasks/run_retrievals/run_retrievals.py

from fractions import Fraction
import json
import logging

import numpy as np
from tqdm import tqdm

from mds_pir.analysis import capacity, check_enumerable, format_rational
from mds_pir.cluster import RetrievalTranscript, deploy
from mds_pir.mds import MessageSet
from mds_pir.params import baseline_message_sizes
from mds_pir.schemes import PirScheme, build_scheme

from .types import RunRetrievalsContext

logger = logging.getLogger(__name__)


# ============================================================================
# Helper functions
# ============================================================================


def _plan(scheme: PirScheme, ctx: RunRetrievalsContext, rng: np.random.Generator):
    """
    Yield (k*, key, weight) for every retrieval to run.

    Exhaustive runs cover each key and message with its exact probability; otherwise each of
    the ``trials`` random retrievals weighs 1/trials.
    """
    k = scheme.params.k
    if ctx.exhaustive:
        check_enumerable(scheme.key_space_size())
        for key, weight in scheme.key_space():
            for k_star in range(k):
                yield k_star, key, weight / k
        return
    for _ in range(ctx.trials):
        k_star = int(rng.integers(0, k))
        yield k_star, scheme.sample_key(rng), Fraction(1, ctx.trials)


def _summarize(
    scheme: PirScheme,
    ctx: RunRetrievalsContext,
    transcripts: list[RetrievalTranscript],
    weights: list[Fraction],
) -> dict:
    params = scheme.params
    mean_download = sum(w * t.downloaded_symbols for w, t in zip(weights, transcripts))
    mean_upload = sum(w * t.uploaded_bytes for w, t in zip(weights, transcripts))
    predicted = scheme.expected_download_formula()

    return {
        "command": "run",
        "params": params.as_dict(),
        "scheme": scheme.name,
        "mode": ctx.mode,
        "exhaustive": ctx.exhaustive,
        "retrievals": len(transcripts),
        "mean_download_symbols": format_rational(mean_download),
        "predicted_download_symbols": format_rational(predicted),
        "observed_rate": format_rational(Fraction(params.l) / mean_download),
        "capacity": format_rational(capacity(params.n, params.t, params.k)),
        "mean_upload_bytes": format_rational(mean_upload),
        "upload_bits_formula": round(scheme.upload_cost_bits(), 9),
        "downloaded_bytes_total": sum(t.downloaded_bytes for t in transcripts),
        "message_size": params.l,
        "baseline_message_sizes": baseline_message_sizes(params.n, params.t, params.k),
        "all_correct": True,
    }


# ============================================================================
# Main public function
# ============================================================================


def run_retrievals(ctx: RunRetrievalsContext) -> dict:
    """
    Run retrievals against N simulated nodes and summarize traffic against the predictions.

    Every reconstruction is checked against the stored message; a mismatch raises
    ReconstructionMismatch.

    Args:
        ctx: RunRetrievalsContext with parameters and run options

    Returns:
        Summary record (no timing fields, so equal seeds give equal records)
    """
    params = ctx.params
    scheme = build_scheme(params, auxiliary=ctx.auxiliary)
    rng = np.random.default_rng(ctx.seed)
    msgs = MessageSet.random(params, scheme.field, rng)

    logger.info(f"Scheme {scheme.name}, (N,T,K)=({params.n},{params.t},{params.k}), L={params.l}")
    plan = "exhaustive" if ctx.exhaustive else f"{ctx.trials} random trials"
    logger.info(f"Mode: {ctx.mode}, {plan}")

    transcripts, weights = [], []
    with deploy(scheme, msgs, ctx.mode) as client:
        retrievals = list(_plan(scheme, ctx, rng))
        for k_star, key, weight in tqdm(retrievals, desc="retrievals", leave=False, disable=None):
            transcripts.append(client.retrieve_with_key(k_star, key))
            weights.append(weight)

    logger.info(f"✓ {len(transcripts)} retrievals reconstructed correctly")

    if ctx.transcripts_path is not None:
        ctx.transcripts_path.parent.mkdir(parents=True, exist_ok=True)
        with open(ctx.transcripts_path, "w", encoding="utf-8") as f:
            json.dump([t.to_dict() for t in transcripts], f, indent=2, sort_keys=True)
        logger.info(f"✓ Transcripts written: {ctx.transcripts_path}")

    summary = _summarize(scheme, ctx, transcripts, weights)
    logger.info(
        f"Mean download {summary['mean_download_symbols']} symbols "
        f"(predicted {summary['predicted_download_symbols']}), rate {summary['observed_rate']} "
        f"vs capacity {summary['capacity']}"
    )
    return summary
