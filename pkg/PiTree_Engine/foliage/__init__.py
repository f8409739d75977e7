"""
Foliage trees over abstract leaf universes.

    universe      LeafUniverse contract + FiniteUniverse
    foliage_tree  FoliageTree, fruit/flesh/yield/scope, shoots, π-refinement
    predicates    FoliageFlags, foliage_flags, grows_into
    laws          fruit and refinement laws
    enumerate     tier-1 instance generators
"""

from PiTree_Engine.foliage.foliage_tree import (
    FoliageTree,
    FoliageView,
    Shoot,
    flesh_of,
    fruit_of,
    pi_refines,
    scope_of,
    shoot_family,
    shoot_of,
    yield_of,
)
from PiTree_Engine.foliage.predicates import FoliageFlags, foliage_flags, grows_into
from PiTree_Engine.foliage.universe import FiniteUniverse, LeafUniverse

__all__ = [
    "FiniteUniverse", "FoliageFlags", "FoliageTree", "FoliageView", "LeafUniverse", "Shoot",
    "flesh_of", "foliage_flags", "fruit_of", "grows_into", "pi_refines", "scope_of",
    "shoot_family", "shoot_of", "yield_of",
]
