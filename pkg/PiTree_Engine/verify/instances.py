"""
Suite instances in JSON form.

Every instance a suite checks is a JSON object tagged with "kind"; the same
object is saved as the witness of a failing check, and decoding it rebuilds
the instance exactly.  Random instances are stored by seed and regenerated.

    tree / shape            finite skeletons
    foliage                 foliage tree over a finite point universe
    family                  host skeleton plus grafts
    foliage-family          foliage host plus foliage grafts (finite points)
    baire-family            seeded random family over the truncated standard tree
    compacts                compact codes and truncation of a pipeline run
    expr / expr-pair        set expressions (plus a sample point)
"""

from __future__ import annotations

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.errors import InvalidCompactCodeError, SchemaViolationError
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.grafting.anatomy import decode_node, encode_node, skeleton_from_json, skeleton_to_json
from PiTree_Engine.trees.fintree import sorted_nodes


def kind_of(instance: dict, location: str = "instance") -> str:
    kind = instance.get("kind") if isinstance(instance, dict) else None
    if not isinstance(kind, str):
        raise SchemaViolationError("instance needs a string 'kind'", location)
    return kind


# ---------------------------------------------------------------------------
# Foliage trees over finite universes
# ---------------------------------------------------------------------------

def foliage_to_json(F: FoliageTree) -> dict:
    return {
        "skeleton": skeleton_to_json(F.skeleton),
        "points": sorted(F.universe.full(), key=repr),
        "leaves": [[encode_node(x), sorted(F.leaf(x), key=repr)] for x in sorted_nodes(F.nodes)],
    }


def foliage_from_json(data: dict, location: str = "foliage") -> FoliageTree:
    if not isinstance(data, dict) or not isinstance(data.get("leaves"), list):
        raise SchemaViolationError("foliage tree needs 'skeleton', 'points' and 'leaves'", location)
    skeleton = skeleton_from_json(data.get("skeleton"), f"{location}.skeleton")
    universe = FiniteUniverse(data.get("points", []))
    leaf = {decode_node(x): frozenset(v) for x, v in data["leaves"]}
    return FoliageTree(skeleton, leaf, universe)


# ---------------------------------------------------------------------------
# Compact codes
# ---------------------------------------------------------------------------

def codes_to_json(codes) -> list[dict]:
    return [c.to_json() for c in codes]


def codes_from_json(rows, location: str = "compacts") -> list[CompactCode]:
    if not isinstance(rows, list):
        raise SchemaViolationError("'compacts' must be a list of compact codes", location)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, dict):
            raise SchemaViolationError("compact code must be an object", f"{location}[{i}]")
        try:
            out.append(CompactCode.from_json(row, f"{location}[{i}]"))
        except InvalidCompactCodeError as exc:
            raise SchemaViolationError(str(exc), f"{location}[{i}]")
    return out


def compacts_instance(codes, depth: int, width: int, threshold: int, corrupt: bool = False) -> dict:
    out = {"kind": "compacts", "compacts": codes_to_json(codes), "depth": depth, "width": width,
           "threshold": threshold}
    if corrupt:
        out["corrupt"] = True
    return out
