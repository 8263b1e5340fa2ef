# utils/reports.py
import json
import logging
from pathlib import Path
import sys

import pandas as pd

logger = logging.getLogger(__name__)

VALID_FORMATS = ["json", "csv"]


def _flatten(record: dict) -> dict:
    """Flatten one level of nested dicts (``params``) into dotted column names for CSV."""
    flat = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for sub_key, sub_value in value.items():
                flat[f"{key}.{sub_key}"] = sub_value
        elif isinstance(value, (list, tuple)):
            flat[key] = json.dumps(value)
        else:
            flat[key] = value
    return flat


def render_report(records: list[dict] | dict, report_format: str) -> str:
    """
    Render report records as JSON or CSV text.

    Args:
        records: A single record or a list of records (JSON-serializable dicts)
        report_format: "json" or "csv"

    Returns:
        Report text, newline terminated
    """
    if report_format not in VALID_FORMATS:
        raise ValueError(f"report format must be one of {VALID_FORMATS}, got '{report_format}'")

    if report_format == "json":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"

    rows = records if isinstance(records, list) else [records]
    df = pd.DataFrame([_flatten(row) for row in rows])
    return df.to_csv(index=False, lineterminator="\n")


def write_report(records: list[dict] | dict, output: str | Path, report_format: str) -> None:
    """
    Write report records to a file, or to stdout when ``output`` is "-".

    Args:
        records: Report records
        output: Output path or "-"
        report_format: "json" or "csv"
    """
    text = render_report(records, report_format)

    if str(output) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    output_path = Path(output)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)

    logger.info(f"✓ Report written: {output_path}")
