"""
Command-line entry point.

    python -m PiTree_Engine run          --config FILE [--out DIR]
    python -m PiTree_Engine verify-laws  --config FILE [--suite ID[,ID...]] [--seed N] [--out DIR]
    python -m PiTree_Engine export       --config FILE --format dot|json [--out DIR]
    python -m PiTree_Engine replay       --witness FILE [--out DIR]

Exit codes:
    0  every selected check passes
    1  a check fails, or the config / witness is invalid
    2  nothing fails but some check is undecidable at the chosen truncation
    3  the filesystem refused a read or write

The output directory defaults to PITREE_OUT_DIR (see PiTree_Engine/config).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from PiTree_Engine.config import LOG_LEVEL, REPORT_STEM, TREE_STEM
from PiTree_Engine.errors import BadParametersError, PiTreeError
from PiTree_Engine.reports.converters import tree_to_dot, tree_to_json
from PiTree_Engine.reports.manager import ReportWriter
from PiTree_Engine.utils.json_helpers import dump_json, load_json_strict
from PiTree_Engine.verify.config import RunConfig, parse_config
from PiTree_Engine.verify.records import VerificationReport
from PiTree_Engine.verify.runner import export_tree, replay_witness, run_pipeline, run_suites

logger = logging.getLogger(__name__)

EXIT_IO = 3

TITLES = {
    "run": "π-Tree Run",
    "verify-laws": "Law Verification",
    "replay": "Witness Replay",
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pitree", description="π-tree rebuilding and law verification.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log suite and stage progress")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run the recursion, check it and export the π-tree")
    run.add_argument("--config", metavar="JSON", required=True, help="Path to the run config")
    run.add_argument("--out", metavar="DIR", help="Output directory")

    laws = sub.add_parser("verify-laws", help="Run law suites and write the report")
    laws.add_argument("--config", metavar="JSON", required=True, help="Path to the run config")
    laws.add_argument("--suite", metavar="ID[,ID...]", help="Comma-separated suite ids (default: config or all)")
    laws.add_argument("--seed", type=int, help="Seed of the randomized suites")
    laws.add_argument("--out", metavar="DIR", help="Output directory")

    export = sub.add_parser("export", help="Write the materialized π-tree")
    export.add_argument("--config", metavar="JSON", required=True, help="Path to the run config")
    export.add_argument("--format", choices=("dot", "json"), required=True, help="Export format")
    export.add_argument("--out", metavar="DIR", help="Output directory")

    replay = sub.add_parser("replay", help="Rerun the check a witness file was written for")
    replay.add_argument("--witness", metavar="JSON", required=True, help="Path to a witness file")
    replay.add_argument("--out", metavar="DIR", help="Output directory")
    return parser


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def _load_config(args) -> RunConfig:
    cfg = parse_config(_read(args.config), command=args.command, source=args.config)
    if getattr(args, "seed", None) is not None:
        if args.seed < 0:
            raise BadParametersError(f"--seed must be >= 0, got {args.seed}", "--seed")
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "suite", None):
        cfg = replace(cfg, suites=tuple(s.strip() for s in args.suite.split(",") if s.strip()))
    return cfg


# ---------------------------------------------------------------------------
# Artifacts
# ---------------------------------------------------------------------------

def write_report(writer: ReportWriter, report: VerificationReport, title: str) -> list[str]:
    """Witness files first (their names go into the records), then the Twin-File report."""
    for record in report.failed:
        if record.witness is not None:
            record.witness_file = writer.write_witness(f"{record.suite} {record.id}", record.witness)
    return writer.save_report(REPORT_STEM, report.to_markdown(title), report.to_frame(), report.to_dict())


def write_tree(writer: ReportWriter, tree, fmt: str) -> str:
    if fmt == "dot":
        return writer.write_text(f"{TREE_STEM}.dot", tree_to_dot(tree))
    return writer.write_text(f"{TREE_STEM}.json", dump_json(tree_to_json(tree)))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_run(cfg: RunConfig, out_dir: str | None = None) -> int:
    report, tree = run_pipeline(cfg)
    writer = ReportWriter(out_dir or cfg.out_dir)
    if tree is not None:
        write_tree(writer, tree, "dot")
        write_tree(writer, tree, "json")
    write_report(writer, report, TITLES["run"])
    return report.exit_code


def cmd_verify_laws(cfg: RunConfig, out_dir: str | None = None) -> int:
    report = run_suites(cfg.suites, cfg.suite_params())
    write_report(ReportWriter(out_dir or cfg.out_dir), report, TITLES["verify-laws"])
    return report.exit_code


def cmd_export(cfg: RunConfig, fmt: str, out_dir: str | None = None) -> int:
    path = write_tree(ReportWriter(out_dir or cfg.out_dir), export_tree(cfg), fmt)
    print(path)
    return 0


def cmd_replay(witness_path: str, out_dir: str | None = None) -> int:
    report = replay_witness(load_json_strict(_read(witness_path), witness_path))
    write_report(ReportWriter(out_dir), report, TITLES["replay"])
    return report.exit_code


def _summary(code: int) -> str:
    return {0: "all checks pass", 1: "some check fails", 2: "undecidable at this truncation"}.get(code, "")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "replay":
            code = cmd_replay(args.witness, args.out)
        else:
            cfg = _load_config(args)
            if args.command == "run":
                code = cmd_run(cfg, args.out)
            elif args.command == "verify-laws":
                code = cmd_verify_laws(cfg, args.out)
            else:
                code = cmd_export(cfg, args.format, args.out)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PiTreeError, LookupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logger.info(f"{args.command}: {_summary(code)}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
