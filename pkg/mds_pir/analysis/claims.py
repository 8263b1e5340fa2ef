# analysis/claims.py
"""
Exhaustive claim checks: privacy, decoding-set sizes, rate, upload cost, correctness, message
size, MDS certificates and compressed/auxiliary query equivalence.
"""

from collections import defaultdict
from fractions import Fraction
import logging
from math import ceil, lcm, log2

import numpy as np
from tqdm import tqdm

from ..field import same_symbols
from ..mds import MessageSet, encode_storage, verify_mds as mds_certificate
from ..params import baseline_message_sizes, converse_applies
from ..schemes import PirScheme, SchemeB, SchemeK2
from ..schemes.scheme_b import gen_answer_high, gen_answer_low
from .download import capacity, download_by_message, max_download
from .report import VerificationReport, check_enumerable, format_rational, timed

logger = logging.getLogger(__name__)

UPLOAD_TOLERANCE = 1e-9


def _progress(iterable, desc: str, total: int):
    return tqdm(iterable, desc=desc, total=total, leave=False, disable=None)


# ============================================================================
# Privacy and decoding sets
# ============================================================================


def query_distributions(
    scheme: PirScheme, cap: int | None = None
) -> list[list[dict[bytes, Fraction]]]:
    """distributions[n][k*] maps each transmitted query payload to its exact probability."""
    params = scheme.params
    check_enumerable(scheme.key_space_size(), cap)
    distributions = [[defaultdict(Fraction) for _ in range(params.k)] for _ in range(params.n)]
    for key, weight in _progress(scheme.key_space(), "privacy", scheme.key_space_size()):
        for k_star in range(params.k):
            for n, query in enumerate(scheme.queries(k_star, key)):
                distributions[n][k_star][scheme.encode_query(query)] += weight
    return [[dict(dist) for dist in per_db] for per_db in distributions]


@timed
def verify_privacy(scheme: PirScheme, cap: int | None = None) -> VerificationReport:
    """Per database, the query distribution is identical for every requested message."""
    distributions = query_distributions(scheme, cap)
    leaking = [
        n
        for n, per_db in enumerate(distributions)
        if any(dist != per_db[0] for dist in per_db[1:])
    ]
    return VerificationReport(
        claim="privacy",
        params=scheme.params.as_dict(),
        expected=0,
        observed=len(leaking),
        passed=not leaking,
        enumeration_size=scheme.key_space_size() * scheme.params.k,
        details={"leaking_databases": leaking} if leaking else {},
    )


@timed
def verify_decoding_sets(scheme: PirScheme, cap: int | None = None) -> VerificationReport:
    """Every set the reconstruction decodes from holds exactly the required number of databases."""
    params = scheme.params
    check_enumerable(scheme.key_space_size(), cap)
    violations = []
    for key, _ in _progress(scheme.key_space(), "decoding sets", scheme.key_space_size()):
        for k_star in range(params.k):
            for message in scheme.decoding_sets(k_star, key).violations:
                violations.append(f"k*={k_star}, key={key}: {message}")

    for line in violations[:10]:
        logger.warning(line)
    return VerificationReport(
        claim="decoding_sets",
        params=params.as_dict(),
        expected=0,
        observed=len(violations),
        passed=not violations,
        enumeration_size=scheme.key_space_size() * params.k,
        details={"first_violations": violations[:10]} if violations else {},
    )


# ============================================================================
# Rate, download and upload
# ============================================================================


@timed
def verify_rate(scheme: PirScheme, cap: int | None = None) -> VerificationReport:
    """L / E[sum l_n] equals the capacity, and E[sum l_n] matches the closed form for every k*."""
    params = scheme.params
    totals = download_by_message(scheme, cap)
    expected_rate = capacity(params.n, params.t, params.k)
    observed_rate = Fraction(params.l) / totals[0]
    formula = scheme.expected_download_formula()
    passed = observed_rate == expected_rate and all(total == formula for total in totals)
    return VerificationReport(
        claim="rate",
        params=params.as_dict(),
        expected=expected_rate,
        observed=observed_rate,
        passed=passed,
        enumeration_size=scheme.key_space_size() * params.k,
        details={
            "expected_download": format_rational(formula),
            "observed_download": [format_rational(total) for total in totals],
            "max_download": max_download(scheme, cap),
        },
    )


@timed
def verify_upload(scheme: PirScheme, cap: int | None = None) -> VerificationReport:
    """
    Sum over databases of log2 |Q_n| (distinct payloads with positive probability) against the
    closed form: equal for A and K2, at most the bound for B.
    """
    params = scheme.params
    distributions = query_distributions(scheme, cap)
    sizes = [len(set().union(*per_db)) for per_db in distributions]

    entropy_bits = sum(log2(size) for size in sizes)
    formula = scheme.upload_cost_bits()
    if isinstance(scheme, SchemeB):
        passed = entropy_bits <= formula + UPLOAD_TOLERANCE
        relation = "at_most"
    else:
        passed = abs(entropy_bits - formula) <= UPLOAD_TOLERANCE
        relation = "equal"

    details = {
        "relation": relation,
        "query_set_sizes": sizes,
        "padded_bits": sum(ceil(log2(size)) for size in sizes),
        "mean_wire_bytes": format_rational(
            sum(
                len(payload) * prob
                for per_db in distributions
                for payload, prob in per_db[0].items()
            )
        ),
    }
    if isinstance(scheme, SchemeB):
        details["branch"] = scheme.upload_cost().branch

    return VerificationReport(
        claim="upload",
        params=params.as_dict(),
        expected=round(formula, 9),
        observed=round(entropy_bits, 9),
        passed=passed,
        enumeration_size=scheme.key_space_size() * params.k,
        details=details,
    )


# ============================================================================
# Correctness, message size, codes and compression
# ============================================================================


def _retrieval_cases(scheme: PirScheme, rng: np.random.Generator, trials: int | None):
    """(messages, shards, k*, key): every key and k* over one message set, or random draws."""
    params = scheme.params
    if trials is None:
        msgs = MessageSet.random(params, scheme.field, rng)
        shards = encode_storage(scheme.code, msgs)
        for key, _ in _progress(scheme.key_space(), "correctness", scheme.key_space_size()):
            for k_star in range(params.k):
                yield msgs, shards, k_star, key
        return

    for _ in _progress(range(trials), "correctness", trials):
        msgs = MessageSet.random(params, scheme.field, rng)
        k_star = int(rng.integers(0, params.k))
        yield msgs, encode_storage(scheme.code, msgs), k_star, scheme.sample_key(rng)


@timed
def verify_correctness(
    scheme: PirScheme,
    rng: np.random.Generator,
    cap: int | None = None,
    trials: int | None = None,
) -> VerificationReport:
    """
    Every key and requested message reconstructs one random message set exactly.

    With ``trials``, that many retrievals instead, each with a fresh random message set, k*
    and key.
    """
    params = scheme.params
    if trials is None:
        check_enumerable(scheme.key_space_size(), cap)
    elif trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")

    failures = count = 0
    for msgs, shards, k_star, key in _retrieval_cases(scheme, rng, trials):
        answers = [scheme.answer(shards[q.db_index], q) for q in scheme.queries(k_star, key)]
        recovered = scheme.reconstruct(answers, k_star, key)
        count += 1
        if not same_symbols(recovered, msgs.message(k_star)):
            failures += 1
            logger.error(f"Wrong reconstruction for k*={k_star}, key={key}")

    return VerificationReport(
        claim="correctness",
        params=params.as_dict(),
        expected=0,
        observed=failures,
        passed=failures == 0,
        enumeration_size=count,
    )


@timed
def verify_message_size(scheme: PirScheme) -> VerificationReport:
    """L = lcm(N-T, T) for Construction-A/B and L = T for the K=2 scheme."""
    params = scheme.params
    expected = params.t if isinstance(scheme, SchemeK2) else lcm(params.n - params.t, params.t)
    observed = params.l
    return VerificationReport(
        claim="message_size",
        params=params.as_dict(),
        expected=expected,
        observed=observed,
        passed=observed == expected == scheme.target_message_size(),
        details={
            "converse_applies": converse_applies(params),
            "baselines": baseline_message_sizes(params.n, params.t, params.k),
        },
    )


@timed
def verify_mds(scheme: PirScheme) -> VerificationReport:
    """Every T x T minor of the base generator and r x r minor of the column code is invertible."""
    codes = {"base": scheme.code}
    if isinstance(scheme, SchemeB) and scheme.code_c is not None:
        codes["column"] = scheme.code_c
    results = {name: mds_certificate(code) for name, code in codes.items()}
    return VerificationReport(
        claim="mds",
        params=scheme.params.as_dict(),
        expected=True,
        observed=all(results.values()),
        passed=all(results.values()),
        details={"codes": results},
    )


@timed
def verify_compression(
    scheme: SchemeB, rng: np.random.Generator, cap: int | None = None
) -> VerificationReport:
    """Clamped and auxiliary queries yield identical answers for every key, k* and database."""
    params = scheme.params
    check_enumerable(scheme.key_space_size(), cap)
    msgs = MessageSet.random(params, scheme.field, rng)
    shards = encode_storage(scheme.code, msgs)

    mismatches = 0
    for key, _ in _progress(scheme.key_space(), "compression", scheme.key_space_size()):
        for k_star in range(params.k):
            for q in scheme.queries(k_star, key):
                shard = shards[q.db_index]
                if scheme.high:
                    clamped = gen_answer_high(shard, q, scheme.code_c, params, scheme.pattern)
                    full = gen_answer_high(
                        shard, q, scheme.code_c, params, scheme.pattern, auxiliary=True
                    )
                else:
                    clamped = gen_answer_low(shard, q, params)
                    full = gen_answer_low(shard, q, params, auxiliary=True)
                if clamped.kept != full.kept or not same_symbols(clamped.symbols, full.symbols):
                    mismatches += 1

    return VerificationReport(
        claim="compression",
        params=params.as_dict(),
        expected=0,
        observed=mismatches,
        passed=mismatches == 0,
        enumeration_size=scheme.key_space_size() * params.k * params.n,
    )
