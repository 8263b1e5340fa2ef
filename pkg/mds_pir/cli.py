# mds_pir/cli.py
"""
Command-line front end: ``run``, ``verify`` and ``sweep``.

Each command starts from its task's config.yaml and overrides the values given as flags.
Exit codes: 0 on success, 1 when a verified claim fails or a retrieval returns the wrong message,
2 on invalid flags or parameters, including those only caught while the command runs (for example
an enumeration above the cap).
"""

import argparse
from pathlib import Path
import sys
from typing import Callable

from .analysis import CLAIMS
from .config import LOGS_DIR
from .errors import PirError, ReconstructionMismatch
from .tasks.run_retrievals import RunRetrievalsContext, run_retrievals
from .tasks.sweep_params import SweepParamsContext, sweep_params
from .tasks.validation import VALID_FORMATS, VALID_MODES, VALID_SCHEMES
from .tasks.verify_claims import VerifyClaimsContext, verify_claims
from .utils import check_missing_keys, load_config, setup_logging, write_report

TASKS_DIR = Path(__file__).parent.resolve() / "tasks"

# Flags that only steer the CLI and never reach a task context
_CLI_ONLY = {"command", "log_dir", "verbose"}


# ============================================================================
# Commands
# ============================================================================


def cmd_run(ctx: RunRetrievalsContext) -> int:
    summary = run_retrievals(ctx)
    write_report(summary, ctx.output, ctx.report_format)
    return 0


def cmd_verify(ctx: VerifyClaimsContext) -> int:
    reports = verify_claims(ctx)
    write_report([report.as_dict() for report in reports], ctx.output, ctx.report_format)
    return 0 if all(report.passed for report in reports) else 1


def cmd_sweep(ctx: SweepParamsContext) -> int:
    records = sweep_params(ctx)
    write_report(records, ctx.output, ctx.report_format)
    return 0 if all(record["pass"] for record in records) else 1


# command -> (task directory, context class, required config keys, command function)
COMMANDS: dict[str, tuple[str, type, list[str], Callable[..., int]]] = {
    "run": ("run_retrievals", RunRetrievalsContext, ["n", "t", "k"], cmd_run),
    "verify": ("verify_claims", VerifyClaimsContext, ["n", "t", "k"], cmd_verify),
    "sweep": ("sweep_params", SweepParamsContext, [], cmd_sweep),
}


# ============================================================================
# Parser
# ============================================================================


def _add_point_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="number of databases N")
    parser.add_argument("--t", type=int, help="MDS recovery threshold T (0 < T < N)")
    parser.add_argument("--k", type=int, help="number of messages K")
    parser.add_argument("--scheme", choices=VALID_SCHEMES, help="construction (auto: A if r = 1)")
    parser.add_argument(
        "--auxiliary",
        action="store_true",
        default=None,
        help="Construction-B only: unclamped queries",
    )


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--field", type=int, dest="field_order", help="field order q")
    parser.add_argument("--seed", type=int, help="seed of the random generator")
    parser.add_argument("--output", help='report path, "-" for stdout')
    parser.add_argument("--format", choices=VALID_FORMATS, dest="report_format")
    parser.add_argument("--log-dir", type=Path, default=None, help=f"default: {LOGS_DIR}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug records on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mds-pir",
        description="Private information retrieval over MDS-coded databases.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="run retrievals against simulated databases")
    _add_point_flags(run)
    run.add_argument("--trials", type=int, help="number of random retrievals")
    run.add_argument("--mode", choices=VALID_MODES, help="in-process calls or loopback TCP")
    run.add_argument(
        "--exhaustive",
        action="store_true",
        default=None,
        help="every key and requested message instead of random trials",
    )
    run.add_argument("--transcripts", help="JSON file for the full retrieval transcripts")
    _add_common_flags(run)

    verify = subparsers.add_parser("verify", help="verify every claim at one parameter point")
    _add_point_flags(verify)
    verify.add_argument("--claims", nargs="+", choices=list(CLAIMS))
    verify.add_argument("--structure-samples", type=int, help="P0/P1 sampling threshold")
    _add_common_flags(verify)

    sweep = subparsers.add_parser("sweep", help="verify claims over a grid of (N, T, K)")
    sweep.add_argument("--min-n", type=int)
    sweep.add_argument("--max-n", type=int)
    sweep.add_argument("--min-k", type=int)
    sweep.add_argument("--max-k", type=int)
    sweep.add_argument(
        "--no-k2",
        action="store_false",
        default=None,
        dest="include_k2",
        help="skip the K=2 scheme points",
    )
    sweep.add_argument("--claims", nargs="+", choices=list(CLAIMS))
    sweep.add_argument("--workers", type=int, help="worker processes (1 runs inline)")
    _add_common_flags(sweep)

    return parser


def _merge_config(args: argparse.Namespace, task_dir: str, required: list[str]) -> dict:
    """Task config.yaml values overridden by every flag that was given."""
    config = load_config(TASKS_DIR / task_dir / "config.yaml")
    overrides = {
        key: value
        for key, value in vars(args).items()
        if key not in _CLI_ONLY and value is not None
    }
    config.update(overrides)
    check_missing_keys(required, config)
    return config


# ============================================================================
# Entry point
# ============================================================================


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)

    task_dir, context_cls, required, command = COMMANDS[args.command]
    logger = setup_logging(task_dir, args.log_dir or LOGS_DIR, verbose=args.verbose)

    try:
        context = context_cls(**_merge_config(args, task_dir, required))
    except ValueError as e:
        logger.error(f"✗ Invalid configuration: {e}")
        return 2

    logger.info("=" * 60)
    logger.info(f"Starting {task_dir} task")
    logger.info("=" * 60)

    try:
        code = command(context)
    except ReconstructionMismatch as e:
        logger.error(f"✗ Retrieval returned the wrong message: {e}")
        return 1
    except PirError as e:
        logger.error(f"✗ {task_dir} task rejected its parameters: {e}")
        return 2

    status = "✓" if code == 0 else "✗"
    logger.info(f"{status} {task_dir} task finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
