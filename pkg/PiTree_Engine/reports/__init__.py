"""
Artifacts of a run: tree and report converters plus the Twin-File writer.

    converters  tree JSON / DOT, report Markdown, record tables
    manager     ReportWriter
"""

from PiTree_Engine.reports.converters import (
    node_kind,
    node_name,
    records_frame,
    report_to_markdown,
    status_counts,
    tree_to_dot,
    tree_to_json,
)
from PiTree_Engine.reports.manager import ReportWriter

__all__ = [
    "ReportWriter", "node_kind", "node_name", "records_frame", "report_to_markdown",
    "status_counts", "tree_to_dot", "tree_to_json",
]
