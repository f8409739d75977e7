"""
Baire-space substrate.

    compact    CompactCode: pruned finite tables with a zero tail
    setexpr    symbolic sets, tri-state classify, child bounds, JSON
    shadow     stratum fingerprints, π-density, confinement depth
    universe   BaireUniverse: SetExpr leaves for foliage trees
    standard   the standard foliage tree S (lazy view + truncation)
"""

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import (
    EMPTY,
    FULL,
    BairePoint,
    Classification,
    Compact,
    Cylinder,
    CylFamilyUnion,
    Diff,
    FiniteCylinderFamily,
    Intersect,
    SetExpr,
    TailPolicy,
    Union,
    classify,
    contains,
    expr_from_json,
    expr_to_json,
)
from PiTree_Engine.baire.shadow import Shadow, depth_shadow, pi_dense_at, pi_density_guarantee
from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.baire.universe import BaireUniverse

__all__ = [
    "EMPTY", "FULL", "BairePoint", "BaireUniverse", "Classification", "Compact", "CompactCode",
    "Cylinder", "CylFamilyUnion", "Diff", "FiniteCylinderFamily", "Intersect", "SetExpr", "Shadow",
    "StdTreeView", "TailPolicy", "Union", "classify", "contains", "depth_shadow", "expr_from_json",
    "expr_to_json", "pi_dense_at", "pi_density_guarantee", "std_tree",
]
