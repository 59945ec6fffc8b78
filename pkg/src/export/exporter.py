"""Difftest report export: JSON lines, CSV and a per-verdict summary table."""

import json
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd

from src.difftest import SuiteReport

CSV_COLUMNS = [
    "index",
    "name",
    "seed",
    "translation",
    "verdict",
    "source",
    "target",
    "source_steps",
    "target_steps",
    "fuel_side",
    "observation",
    "program",
    "detail",
]


def export_to_jsonl(report: SuiteReport) -> str:
    """One sorted-key record per item, then a summary line. Byte-stable for a fixed seed."""
    return report.to_json_lines()


def report_frame(report: SuiteReport) -> pd.DataFrame:
    """One row per item; nested observations are kept as JSON text."""
    rows = []
    for record in report.records():
        row = dict(record)
        if "observation" in row:
            row["observation"] = json.dumps(row["observation"])
        rows.append(row)
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def export_to_csv(report: SuiteReport) -> str:
    if not report.items:
        raise ValueError("No data to export")
    return report_frame(report).to_csv(index=False)


def summary_table(report: SuiteReport) -> pd.DataFrame:
    """Item counts and mean step counts per (verdict, source outcome)."""
    frame = report_frame(report)
    if frame.empty:
        return pd.DataFrame(columns=["verdict", "source", "programs", "mean_source_steps", "mean_target_steps"])
    grouped = frame.groupby(["verdict", "source"], sort=True)
    return grouped.agg(
        programs=("source_steps", "size"),
        mean_source_steps=("source_steps", "mean"),
        mean_target_steps=("target_steps", "mean"),
    ).round(1).reset_index()


EXPORTERS = {
    "jsonl": (export_to_jsonl, "application/x-ndjson"),
    "csv": (export_to_csv, "text/csv"),
}


def format_for_path(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    return "csv" if suffix == "csv" else "jsonl"


def generate_export(report: SuiteReport, fmt: str) -> Dict[str, Any]:
    """Render ``report`` as ``fmt`` and return the file data, or the error."""
    if fmt not in EXPORTERS:
        return {"success": False, "error": f"Unknown format: {fmt}"}
    if not report.items:
        return {"success": False, "error": "No data to export"}
    try:
        export_fn, mime = EXPORTERS[fmt]
        text = export_fn(report)
    except (ValueError, TypeError) as exc:
        return {"success": False, "error": str(exc)}
    return {
        "success": True,
        "file_data": text.encode("utf-8"),
        "file_name": f"difftest_{report.translation}_{report.seed}.{fmt}",
        "mime": mime,
    }


def write_report(report: SuiteReport, path: Union[str, Path]) -> Path:
    """Write the report to ``path``; the suffix picks CSV or JSON lines."""
    result = generate_export(report, format_for_path(path))
    if not result["success"]:
        raise ValueError(result["error"])
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(result["file_data"])
    return target
