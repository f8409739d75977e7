"""
Laws about fruits and refinement, evaluated on explicit foliage trees.
"""

from __future__ import annotations

from itertools import combinations

from PiTree_Engine.foliage.foliage_tree import FoliageTree, flesh_of, fruit_of, pi_refines, yield_of
from PiTree_Engine.foliage.predicates import foliage_flags
from PiTree_Engine.foliage.universe import LeafUniverse


def _subsets(nodes):
    nodes = sorted(nodes, key=repr)
    for k in range(1, len(nodes) + 1):
        yield from (frozenset(c) for c in combinations(nodes, k))


def check_cofinal_fruit(F: FoliageTree) -> list[str]:
    """Nonincreasing F: a cofinal A ⊆ B has the same fruit as B."""
    if not foliage_flags(F, strict=True).nonincreasing:
        return []
    sk, U = F.skeleton, F.universe
    bad = []
    for B in _subsets(sk.nodes):
        for A in _subsets(B):
            cofinal = all(any(b == a or sk.less(b, a) for a in A) for b in B)
            if cofinal and not U.equal(fruit_of(F, A), fruit_of(F, B)):
                bad.append(f"fruit of cofinal {sorted(map(repr, A))} differs from fruit of {sorted(map(repr, B))}")
    return bad


def check_locally_strict_equivalence(F: FoliageTree) -> list[str]:
    """Rooted F: locally strict ⇔ splittable and flesh = yield."""
    if F.skeleton.least_node() is None:
        return []
    flags = foliage_flags(F, strict=True)
    U = F.universe
    rhs = bool(flags.splittable) and U.equal(flesh_of(F), yield_of(F))
    if bool(flags.locally_strict) != rhs:
        return [f"locally_strict={flags.locally_strict} but splittable∧(flesh=yield)={rhs}"]
    return []


def check_fruit_laws(F: FoliageTree) -> list[str]:
    return check_cofinal_fruit(F) + check_locally_strict_equivalence(F)


def check_refinement_transitive(gamma, delta, epsilon, universe: LeafUniverse) -> list[str]:
    if pi_refines(gamma, delta, universe) and pi_refines(delta, epsilon, universe):
        if not pi_refines(gamma, epsilon, universe):
            return ["≫ is not transitive on this triple"]
    return []
