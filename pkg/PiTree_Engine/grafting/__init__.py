"""
Grafts, consistent families, hybrids and foliage hybrids.

    anatomy         graft clauses, implant/explant, family consistency, JSON
    hybrid          tagged hybrid nodes, the five-case order, hybrid_build
    oracle          networkx transitive-closure cross-check
    foliage_hybrid  foliage grafts, cuts, loss, foliage_hybrid_build
    laws            law checks as violation lists
    enumerate       graft / family / foliage-family generators
"""

from PiTree_Engine.grafting.anatomy import (
    ConsistentFamily,
    GraftAnatomy,
    check_family,
    consistent_family,
    family_from_json,
    family_to_json,
    graft_anatomy,
    pair_violations,
)
from PiTree_Engine.grafting.foliage_hybrid import (
    FoliageFamily,
    FoliageGraftCheck,
    foliage_family,
    foliage_graft_check,
    foliage_hybrid_build,
)
from PiTree_Engine.grafting.hybrid import (
    BranchTrace,
    Graft,
    HybridNode,
    Supp,
    branch_trace,
    hybrid_build,
    hybrid_relate,
)

__all__ = [
    "BranchTrace", "ConsistentFamily", "FoliageFamily", "FoliageGraftCheck", "Graft",
    "GraftAnatomy", "HybridNode", "Supp", "branch_trace", "check_family", "consistent_family",
    "family_from_json", "family_to_json", "foliage_family", "foliage_graft_check",
    "foliage_hybrid_build", "graft_anatomy", "hybrid_build", "hybrid_relate", "pair_violations",
]
