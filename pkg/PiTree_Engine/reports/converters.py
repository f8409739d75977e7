"""
Tree and report converters.

Each converter turns an engine object (a materialized tree, a report dict)
into a plain artifact string or table.  The ReportWriter then saves the
results as they are.

Usage:
    from PiTree_Engine.reports.converters import tree_to_dot, report_to_markdown
    dot = tree_to_dot(H)
    md = report_to_markdown("π-tree run", report)
"""

from __future__ import annotations

import pandas as pd

from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.grafting.hybrid import Graft, Supp
from PiTree_Engine.pipeline.blueprint import ImplantNode
from PiTree_Engine.trees.fintree import FinTree, sorted_nodes
from PiTree_Engine.trees.seq import fmt_seq

RECORD_COLUMNS = ["id", "suite", "status", "instances", "parameters", "witness"]
STATUS_ORDER = ("fail", "undecidable-at-depth", "pass")


def _fmt(value) -> str:
    """Markdown cell text, a dash when missing."""
    if value is None or value == "":
        return "—"
    return str(value)


# ==================================================================
# Node naming
# ==================================================================

def node_kind(node) -> str:
    """"implant" for blueprint implant nodes, "support" for host nodes of a hybrid, else "node"."""
    if isinstance(node, Graft):
        return "implant"
    if isinstance(node, ImplantNode):
        return "implant"
    if isinstance(node, Supp):
        return "support"
    return "node"


def node_name(node) -> str:
    """Short display name: sequences in angle brackets, implants as Imp(x,l)."""
    if isinstance(node, Supp):
        return node_name(node.node)
    if isinstance(node, Graft):
        inner = node.node
        if isinstance(inner, ImplantNode):
            return repr(inner)
        return f"g{node.gid}:{node_name(inner)}"
    if isinstance(node, tuple) and all(isinstance(v, int) for v in node):
        return fmt_seq(node)
    return repr(node) if not isinstance(node, str) else node


def _skeleton(tree: FinTree | FoliageTree) -> FinTree:
    return tree.skeleton if isinstance(tree, FoliageTree) else tree


# ==================================================================
# Trees
# ==================================================================

def tree_to_json(tree: FinTree | FoliageTree) -> dict:
    """
    Tree JSON: the skeleton schema ({"nodes": [{"id", "label", "parent"}],
    "frontier"}) with "name" and "kind" per node, plus "leaf" for foliage
    trees.
    """
    data = tree.to_dict()
    order = sorted_nodes(_skeleton(tree).nodes)
    for row, x in zip(data["nodes"], order):
        row["name"] = node_name(x)
        row["kind"] = node_kind(x)
    return data


def tree_to_dot(tree: FinTree | FoliageTree, name: str = "G") -> str:
    """
    DOT digraph with one edge per parent link.  Implant nodes are boxes,
    frontier nodes are dashed.
    """
    sk = _skeleton(tree)
    order = sorted_nodes(sk.nodes)
    ids = {x: f"n{i}" for i, x in enumerate(order)}

    lines = [f"digraph {name} {{"]
    for x in order:
        attrs = [f'label="{_escape(node_name(x))}"']
        if node_kind(x) == "implant":
            attrs.append("shape=box")
        if x in sk.frontier:
            attrs.append("style=dashed")
        lines.append(f'  "{ids[x]}" [{", ".join(attrs)}];')
    for x in order:
        p = sk.parent_of(x)
        if p is not None:
            lines.append(f'  "{ids[p]}" -> "{ids[x]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


# ==================================================================
# Reports
# ==================================================================

def records_frame(records: list[dict]) -> pd.DataFrame:
    """Flat table of check records, sorted by id (CSV twin of a report)."""
    rows = []
    for r in sorted(records, key=lambda r: (r.get("suite", ""), r["id"])):
        rows.append({
            "id": r["id"],
            "suite": r.get("suite", ""),
            "status": r["status"],
            "instances": r.get("instances"),
            "parameters": ";".join(f"{k}={v}" for k, v in sorted(r.get("parameters", {}).items())),
            "witness": "yes" if r.get("witness") is not None else "",
        })
    return pd.DataFrame(rows, columns=RECORD_COLUMNS)


def status_counts(records: list[dict]) -> dict[str, int]:
    frame = records_frame(records)
    counts = frame["status"].value_counts().to_dict() if len(frame) else {}
    return {s: int(counts.get(s, 0)) for s in STATUS_ORDER}


def report_to_markdown(title: str, report: dict) -> str:
    """Human-readable twin of a verification report."""
    lines: list[str] = []
    records = report.get("records", [])
    params = report.get("parameters", {})

    lines.append(f"# {title}")
    lines.append("")
    lines.append(f"- **Command:** {_fmt(report.get('command'))}")
    for key in sorted(params):
        lines.append(f"- **{key}:** {_fmt(params[key])}")
    if report.get("scheme"):
        lines.append(f"- **Partition scheme:** {report['scheme']} (downstream numbers depend on it)")
    lines.append("")

    counts = status_counts(records)
    lines.append("## Summary")
    lines.append("")
    lines.append("| Status | Count |")
    lines.append("|--------|------:|")
    for status in STATUS_ORDER:
        lines.append(f"| {status} | {counts[status]} |")
    lines.append("")

    _section_records(lines, records)
    _section_witnesses(lines, records)
    _section_notes(lines, report.get("notes", []))
    return "\n".join(lines)


def _section_records(lines: list[str], records: list[dict]) -> None:
    lines.append("## Checks")
    lines.append("")
    if not records:
        lines.append("- *No checks were run.*")
        lines.append("")
        return
    frame = records_frame(records)
    lines.append("| Suite | Check | Status | Instances |")
    lines.append("|-------|-------|--------|----------:|")
    for row in frame.itertuples(index=False):
        instances = None if pd.isna(row.instances) else int(row.instances)
        lines.append(f"| {_fmt(row.suite)} | {row.id} | {row.status} | {_fmt(instances)} |")
    lines.append("")


def _section_witnesses(lines: list[str], records: list[dict]) -> None:
    failing = [r for r in records if r.get("witness") is not None]
    if not failing:
        return
    lines.append("## Witnesses")
    lines.append("")
    for r in sorted(failing, key=lambda r: r["id"]):
        lines.append(f"- **{r['id']}** ({r['status']}): `{r.get('witness_file') or 'inline'}`")
    lines.append("")


def _section_notes(lines: list[str], notes: list[str]) -> None:
    if not notes:
        return
    lines.append("## Notes")
    lines.append("")
    for note in notes:
        lines.append(f"- {note}")
    lines.append("")
