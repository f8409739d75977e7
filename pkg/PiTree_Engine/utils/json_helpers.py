"""
Strict JSON helpers for configs, witnesses and exports.

Configs must fail loudly with a location instead of being repaired, and
every artifact the engine writes must be byte-identical across reruns.

Usage:
    from PiTree_Engine.utils.json_helpers import load_json_strict, dump_json

    data = load_json_strict(text, source="run.json")
    text = dump_json(report_dict)
"""

from __future__ import annotations

import json
import logging

from PiTree_Engine.errors import MalformedJsonError, SchemaViolationError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def load_json_strict(text: str | bytes, source: str = "<config>") -> dict:
    """
    Parse a JSON object, raising with line/column on any defect.

    Args:
        text: UTF-8 JSON text (bytes are decoded strictly).
        source: Name used in error locations.

    Returns:
        The parsed top-level object.

    Raises:
        MalformedJsonError: Undecodable bytes or invalid JSON.
        SchemaViolationError: The top level is not an object.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedJsonError(f"not UTF-8 ({exc.reason})", f"{source}@byte {exc.start}")

    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MalformedJsonError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}")

    if not isinstance(data, dict):
        raise SchemaViolationError(f"top level must be an object, got {type(data).__name__}", source)
    _log(f"loaded {source} with keys {sorted(data)}")
    return data


def dump_json(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def seq_key(seq) -> str:
    """Stringified sequence used as a table key: () -> "", (0, 1) -> "0,1"."""
    return ",".join(str(v) for v in seq)


def parse_seq_key(key: str, location: str = "") -> tuple[int, ...]:
    if key.strip() == "":
        return ()
    try:
        values = tuple(int(part) for part in key.split(","))
    except ValueError:
        raise SchemaViolationError(f"bad sequence key {key!r}", location or None)
    if any(v < 0 for v in values):
        raise SchemaViolationError(f"negative value in sequence key {key!r}", location or None)
    return values


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _reject_constant(name: str):
    # NaN / Infinity are not JSON
    raise json.JSONDecodeError(f"non-standard constant {name}", name, 0)


def _log(msg: str) -> None:
    logger.debug(f"[json_helpers] {msg}")
