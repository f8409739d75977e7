"""
Run configuration — strict parsing of the JSON config files.

Accepted keys (all optional):

    {
      "compacts": [CompactCode JSON, ...],
      "points":   [[0, 1], [2]],             # each becomes a singleton code
      "stages":   n,                         # default: every compact
      "trunc":    {"depth": d, "width": w, "threshold": m},
      "suites":   ["tree-laws", ...],        # default: every suite
      "seed": 0, "samples": 50, "max_nodes": 5,
      "out":      "output/dir",
      "fixture":  {"corrupt_family": true}   # test fixture, breaks the π-tree
    }

Errors carry the key path of the offending value.

Usage:
    from PiTree_Engine.verify.config import parse_config
    cfg = parse_config(open("run.json").read(), command="run", source="run.json")
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.config import (
    DEFAULT_DEPTH,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    DEFAULT_WIDTH,
    MAX_ENUM_NODES,
)
from PiTree_Engine.errors import BadParametersError, SchemaViolationError
from PiTree_Engine.utils.json_helpers import load_json_strict
from PiTree_Engine.verify.instances import codes_from_json
from PiTree_Engine.verify.registry import SuiteRegistry
from PiTree_Engine.verify.suites import SuiteParams

logger = logging.getLogger(__name__)

COMMANDS = ("run", "verify-laws", "export", "replay")
TOP_KEYS = {"compacts", "points", "stages", "trunc", "suites", "seed", "samples", "max_nodes", "out", "fixture"}
TRUNC_KEYS = {"depth", "width", "threshold"}
FIXTURE_KEYS = {"corrupt_family"}


@dataclass(frozen=True)
class RunConfig:
    command: str = "run"
    compacts: tuple = ()
    stages: int = 0
    depth: int = DEFAULT_DEPTH
    width: int = DEFAULT_WIDTH
    threshold: int = DEFAULT_THRESHOLD
    suites: tuple = ()
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    max_nodes: int = min(5, MAX_ENUM_NODES)
    out_dir: str | None = None
    corrupt: bool = False

    @property
    def codes(self) -> list[CompactCode]:
        """The compact codes removed by the run (the first ``stages``)."""
        return list(self.compacts[:self.stages])

    def suite_params(self) -> SuiteParams:
        return SuiteParams(
            depth=self.depth,
            width=self.width,
            threshold=self.threshold,
            max_nodes=self.max_nodes,
            samples=self.samples,
            seed=self.seed,
            compacts=tuple(self.codes),
        )

    def to_dict(self) -> dict:
        """Parameters echoed into reports."""
        return {
            "command": self.command,
            "stages": self.stages,
            "compacts": len(self.compacts),
            "depth": self.depth,
            "width": self.width,
            "threshold": self.threshold,
            "suites": list(self.suites),
            "seed": self.seed,
            "samples": self.samples,
            "max_nodes": self.max_nodes,
        }


# ---------------------------------------------------------------------------
# Field readers
# ---------------------------------------------------------------------------

def _reject_unknown(data: dict, allowed: set, location: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise SchemaViolationError(f"unknown key(s) {unknown}; allowed: {sorted(allowed)}", location)


def _int(data: dict, key: str, default: int, location: str, minimum: int = 0) -> int:
    if key not in data:
        return default
    value = data[key]
    # bool is an int subclass
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolationError(f"'{key}' must be an integer, got {type(value).__name__}", location)
    if value < minimum:
        raise BadParametersError(f"'{key}' must be >= {minimum}, got {value}", location)
    return value


def _object(data: dict, key: str, allowed: set) -> dict:
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise SchemaViolationError(f"'{key}' must be an object", key)
    _reject_unknown(value, allowed, key)
    return value


def _points(rows) -> list[CompactCode]:
    if not isinstance(rows, list):
        raise SchemaViolationError("'points' must be a list of sequences", "points")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in row):
            raise SchemaViolationError("a point prefix is a list of naturals", f"points[{i}]")
        out.append(CompactCode.point(tuple(row)))
    return out


def _suites(rows, registry: SuiteRegistry) -> tuple:
    if not isinstance(rows, list) or not all(isinstance(s, str) for s in rows):
        raise SchemaViolationError("'suites' must be a list of suite ids", "suites")
    return tuple(registry.resolve(rows)) if rows else ()


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def parse_config(text: str | bytes, command: str = "run", source: str = "<config>") -> RunConfig:
    """
    Parse and validate a run config.

    Raises:
        MalformedJsonError: not UTF-8 JSON.
        SchemaViolationError: unknown keys, wrong types, invalid compact codes.
        BadParametersError: non-positive truncation, stages out of range.
        UnknownSuiteError: a suite id outside the catalog.
    """
    if command not in COMMANDS:
        raise BadParametersError(f"unknown command '{command}'", "command")
    data = load_json_strict(text, source)
    _reject_unknown(data, TOP_KEYS, source)

    codes = codes_from_json(data.get("compacts", []), "compacts")
    codes += _points(data.get("points", []))

    stages = _int(data, "stages", len(codes), "stages")
    if stages > len(codes):
        raise BadParametersError(f"{stages} stages requested but only {len(codes)} compact codes given", "stages")

    trunc = _object(data, "trunc", TRUNC_KEYS)
    depth = _int(trunc, "depth", DEFAULT_DEPTH, "trunc.depth", minimum=1)
    width = _int(trunc, "width", DEFAULT_WIDTH, "trunc.width", minimum=1)
    threshold = _int(trunc, "threshold", DEFAULT_THRESHOLD, "trunc.threshold", minimum=1)
    if threshold > width:
        raise BadParametersError(f"threshold {threshold} exceeds width {width}", "trunc.threshold")

    fixture = _object(data, "fixture", FIXTURE_KEYS)
    corrupt = fixture.get("corrupt_family", False)
    if not isinstance(corrupt, bool):
        raise SchemaViolationError("'corrupt_family' must be a boolean", "fixture.corrupt_family")

    out = data.get("out")
    if out is not None and not isinstance(out, str):
        raise SchemaViolationError("'out' must be a path string", "out")

    cfg = RunConfig(
        command=command,
        compacts=tuple(codes),
        stages=stages,
        depth=depth,
        width=width,
        threshold=threshold,
        suites=_suites(data.get("suites", []), SuiteRegistry()),
        seed=_int(data, "seed", DEFAULT_SEED, "seed"),
        samples=_int(data, "samples", DEFAULT_SAMPLES, "samples"),
        max_nodes=_int(data, "max_nodes", min(5, MAX_ENUM_NODES), "max_nodes", minimum=1),
        out_dir=out,
        corrupt=corrupt,
    )
    if cfg.max_nodes > MAX_ENUM_NODES:
        raise BadParametersError(f"max_nodes {cfg.max_nodes} exceeds the enumeration bound {MAX_ENUM_NODES}",
                                 "max_nodes")
    logger.info(f"parsed {source}: {cfg.stages} stage(s), depth={depth} width={width} threshold={threshold}")
    return cfg
