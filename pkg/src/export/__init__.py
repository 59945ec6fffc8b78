"""Report export."""

from .exporter import (
    export_to_csv,
    export_to_jsonl,
    generate_export,
    report_frame,
    summary_table,
    write_report,
)

__all__ = [
    "export_to_csv",
    "export_to_jsonl",
    "generate_export",
    "report_frame",
    "summary_table",
    "write_report",
]
