# tests/test_cli.py

import json
from pathlib import Path
import re
import tomllib

import pandas as pd
import pytest

from mds_pir.analysis import VerificationReport
from mds_pir.errors import EnumerationTooLarge, ReconstructionMismatch
from mds_pir.cli import build_parser, main
from mds_pir.params import SchemeTag
from mds_pir.tasks.run_retrievals import RunRetrievalsContext
from mds_pir.tasks.sweep_params import (
    SweepParamsContext,
    SweepPoint,
    summarize_sweep,
    sweep_points,
)
from mds_pir.tasks.verify_claims import VerifyClaimsContext


@pytest.fixture
def cli(tmp_path):
    """Run the CLI with logs kept under tmp_path."""

    def _cli(*args: str) -> int:
        return main([*args, "--log-dir", str(tmp_path / "logs")])

    return _cli


# ============================================================================
# run
# ============================================================================


def test_run_exhaustive(cli, tmp_path):
    out = tmp_path / "run.json"
    code = cli("run", "--n", "3", "--t", "2", "--k", "3", "--exhaustive", "--output", str(out))
    assert code == 0
    summary = json.loads(out.read_text())
    assert summary["retrievals"] == 27
    assert summary["mean_download_symbols"] == "38/9"
    assert summary["predicted_download_symbols"] == "38/9"
    assert summary["observed_rate"] == summary["capacity"] == "9/19"
    assert summary["message_size"] == 2
    assert summary["all_correct"] is True


def test_run_is_reproducible(cli, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        assert cli("run", "--trials", "20", "--seed", "11", "--output", str(out)) == 0
    assert first.read_bytes() == second.read_bytes()


def test_run_csv_and_transcripts(cli, tmp_path):
    out, transcripts = tmp_path / "run.csv", tmp_path / "t" / "transcripts.json"
    code = cli(
        "run",
        "--n", "5", "--t", "3", "--k", "2", "--scheme", "k2",
        "--trials", "5",
        "--format", "csv",
        "--output", str(out),
        "--transcripts", str(transcripts),
    )  # fmt: skip
    assert code == 0
    df = pd.read_csv(out)
    assert "params.n" in df.columns
    assert df.loc[0, "scheme"] == "k2"
    assert len(json.loads(transcripts.read_text())) == 5


def test_run_writes_log_file(cli, tmp_path):
    cli("run", "--trials", "2", "--output", str(tmp_path / "run.json"))
    assert (tmp_path / "logs" / "run_retrievals.log").exists()


def test_log_records_carry_the_command(cli, tmp_path, capsys):
    args = ["verify", "--n", "3", "--t", "2", "--k", "3", "--claims", "rate"]
    args += ["--output", str(tmp_path / "verify.json")]
    cli(*args, "-v")
    text = (tmp_path / "logs" / "verify_claims.log").read_text(encoding="utf-8")
    assert " - verify_claims - " in text
    assert "Starting verify_claims task" in text
    # DEBUG reaches stderr only with --verbose
    assert "Logging to" in capsys.readouterr().err
    cli(*args)
    assert "Logging to" not in capsys.readouterr().err


# ============================================================================
# Exit codes
# ============================================================================


def test_invalid_parameters_exit_2(cli, tmp_path):
    assert cli("run", "--t", "5", "--output", str(tmp_path / "x.json")) == 2
    assert cli("run", "--field", "6", "--output", str(tmp_path / "x.json")) == 2
    assert cli("sweep", "--max-n", "3", "--field", "12") == 2
    assert cli("verify", "--n", "3", "--t", "1", "--k", "3", "--scheme", "k2") == 2
    assert not (tmp_path / "x.json").exists()


def test_bad_flags_exit_2(cli):
    assert cli("run", "--bogus") == 2
    assert cli("verify", "--claims", "speed") == 2
    assert main([]) == 2


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "verify" in capsys.readouterr().out


def test_verify_passes(cli, tmp_path):
    out = tmp_path / "verify.json"
    code = cli("verify", "--n", "3", "--t", "2", "--k", "3", "--output", str(out))
    assert code == 0
    records = json.loads(out.read_text())
    assert [record["claim"] for record in records] == [
        "message_size",
        "mds",
        "privacy",
        "decoding_sets",
        "rate",
        "upload",
        "correctness",
        "p0",
        "p1",
    ]
    assert all(record["pass"] for record in records)


def test_verify_selected_claims_as_csv(cli, tmp_path):
    out = tmp_path / "verify.csv"
    code = cli(
        "verify",
        "--n", "3", "--t", "2", "--k", "2", "--scheme", "k2",
        "--claims", "rate", "upload",
        "--format", "csv",
        "--output", str(out),
    )  # fmt: skip
    assert code == 0
    df = pd.read_csv(out)
    assert list(df["claim"]) == ["rate", "upload"]
    assert df.loc[0, "expected"] == "3/5"


def test_verify_failure_exits_1(cli, tmp_path, monkeypatch):
    failing = VerificationReport(claim="rate", params={}, expected=1, observed=0, passed=False)
    monkeypatch.setattr("mds_pir.cli.verify_claims", lambda ctx: [failing])
    code = cli("verify", "--n", "3", "--t", "2", "--k", "3", "--output", str(tmp_path / "v.json"))
    assert code == 1


def test_errors_raised_while_running_exit_2(cli, tmp_path, monkeypatch):
    def too_large(ctx):
        raise EnumerationTooLarge("enumeration of 10^9 realizations exceeds the cap")

    monkeypatch.setattr("mds_pir.cli.verify_claims", too_large)
    code = cli("verify", "--n", "3", "--t", "2", "--k", "3", "--output", str(tmp_path / "v.json"))
    assert code == 2
    assert not (tmp_path / "v.json").exists()


def test_wrong_reconstruction_exits_1(cli, tmp_path, monkeypatch):
    def mismatch(ctx):
        raise ReconstructionMismatch("message 1 differs at symbol 0")

    monkeypatch.setattr("mds_pir.cli.run_retrievals", mismatch)
    assert cli("run", "--trials", "2", "--output", str(tmp_path / "r.json")) == 1


@pytest.mark.slow
def test_verify_construction_b(cli, tmp_path):
    out = tmp_path / "verify.json"
    code = cli("verify", "--n", "5", "--t", "3", "--k", "4", "--scheme", "b", "--output", str(out))
    assert code == 0
    claims = {record["claim"] for record in json.loads(out.read_text())}
    assert "compression" in claims


# ============================================================================
# sweep
# ============================================================================


def test_small_sweep(cli, tmp_path):
    out = tmp_path / "sweep.json"
    code = cli("sweep", "--max-n", "3", "--max-k", "2", "--workers", "1", "--output", str(out))
    assert code == 0
    records = json.loads(out.read_text())
    # A and B at 3 (N, T) pairs and K in {1, 2}, plus K2 at (2,1,2) and (3,2,2); 5 claims each
    assert len(records) == (3 * 2 * 2 + 2) * 5
    assert all(record["pass"] for record in records)


def test_sweep_points():
    ctx = SweepParamsContext(min_n=2, max_n=3, min_k=2, max_k=2)
    assert list(sweep_points(ctx)) == [
        SweepPoint(2, 1, 2, SchemeTag.A),
        SweepPoint(2, 1, 2, SchemeTag.B),
        SweepPoint(2, 1, 2, SchemeTag.K2),
        SweepPoint(3, 1, 2, SchemeTag.A),
        SweepPoint(3, 1, 2, SchemeTag.B),
        SweepPoint(3, 2, 2, SchemeTag.A),
        SweepPoint(3, 2, 2, SchemeTag.B),
        SweepPoint(3, 2, 2, SchemeTag.K2),
    ]
    ctx = SweepParamsContext(min_n=3, max_n=3, min_k=2, max_k=3, include_k2=False)
    assert [point.label() for point in sweep_points(ctx)] == [
        "a(3,1,2)",
        "b(3,1,2)",
        "a(3,1,3)",
        "b(3,1,3)",
        "a(3,2,2)",
        "b(3,2,2)",
        "a(3,2,3)",
        "b(3,2,3)",
    ]
    assert SweepParamsContext().min_k == 1


def test_summarize_sweep():
    records = [
        {"claim": "rate", "pass": True, "ms": 1.0},
        {"claim": "privacy", "pass": True, "ms": 2.0},
        {"claim": "rate", "pass": False, "ms": 3.0},
    ]
    summary = summarize_sweep(records)
    assert list(summary["claim"]) == ["rate", "privacy"]
    assert list(summary["points"]) == [2, 1]
    assert list(summary["failed"]) == [1, 0]
    assert list(summary["total_ms"]) == [4.0, 2.0]
    assert summarize_sweep([]).empty


# ============================================================================
# Contexts
# ============================================================================


@pytest.mark.parametrize(
    "make",
    [
        lambda: RunRetrievalsContext(n=3, t=2, k=3, mode="udp"),
        lambda: RunRetrievalsContext(n=3, t=2, k=3, trials=0),
        lambda: RunRetrievalsContext(n=3, t=3, k=3),
        lambda: RunRetrievalsContext(n=3, t=2, k=3, field_order=6),
        lambda: VerifyClaimsContext(n=3, t=2, k=3, claims=[]),
        lambda: VerifyClaimsContext(n=3, t=2, k=3, claims=["speed"]),
        lambda: VerifyClaimsContext(n=3, t=2, k=3, report_format="xml"),
        lambda: SweepParamsContext(min_n=1),
        lambda: SweepParamsContext(min_n=5, max_n=4),
        lambda: SweepParamsContext(min_k=3, max_k=2),
        lambda: SweepParamsContext(max_n=8, field_order=7),
        lambda: SweepParamsContext(max_n=8, field_order=12),
        lambda: SweepParamsContext(workers=0),
    ],
)
def test_context_validation(make):
    with pytest.raises(ValueError):
        make()


def test_auto_scheme_resolution():
    assert RunRetrievalsContext(n=3, t=2, k=3).params.scheme is SchemeTag.A
    assert VerifyClaimsContext(n=5, t=3, k=4).params.scheme is SchemeTag.B
    assert VerifyClaimsContext(n=5, t=3, k=2, scheme="k2").params.l == 3


def test_parser_leaves_unset_flags_none():
    args = build_parser().parse_args(["sweep", "--no-k2"])
    assert args.include_k2 is False
    assert args.max_n is None
    args = build_parser().parse_args(["run", "--format", "csv"])
    assert args.report_format == "csv"
    assert args.exhaustive is None


# ============================================================================
# Packaging
# ============================================================================


def test_runtime_dependencies():
    pyproject = tomllib.loads((Path(__file__).parents[1] / "pyproject.toml").read_text())
    names = {re.split(r"[ (<>=~]", dep)[0] for dep in pyproject["project"]["dependencies"]}
    assert names == {"python-dotenv", "pandas", "numpy", "galois", "tqdm", "pyyaml"}
