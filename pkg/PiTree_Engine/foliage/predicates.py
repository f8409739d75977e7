"""
Foliage predicates evaluated literally on explicit foliage trees.

Flags are True / False, or None when the universe cannot settle a query at
its truncation depth (Baire leaves compared on a shadow stratum).  Pass
``strict=True`` to get UndecidableAtDepthError instead of None.

Locally-strict is only demanded at nodes whose sons are all materialized:
non-maximal nodes outside the skeleton frontier.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Callable

from PiTree_Engine.errors import UndecidableAtDepthError
from PiTree_Engine.foliage.foliage_tree import FoliageTree, fruit_of, scope_of, shoot_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FoliageFlags:
    nonempty_leaves: bool | None
    nonincreasing: bool | None
    splittable: bool | None
    complete: bool | None
    strict_branches: bool | None
    locally_strict: bool | None
    open_in_universe: bool | None

    def as_dict(self) -> dict:
        return asdict(self)


def _all(checks, strict: bool) -> bool | None:
    """Conjunction where an undecidable conjunct makes the result None (unless a False shows up)."""
    undecided = False
    for check in checks:
        try:
            if not check():
                return False
        except UndecidableAtDepthError:
            if strict:
                raise
            undecided = True
    return None if undecided else True


def nonincreasing_checks(F: FoliageTree) -> list[Callable[[], bool]]:
    U, sk = F.universe, F.skeleton
    return [
        (lambda x=x, y=y: U.is_subset(F.leaf(y), F.leaf(x)))
        for y in sk.nodes for x in sk.ancestors(y)
    ]


def splittable_checks(F: FoliageTree) -> list[Callable[[], bool]]:
    U, sk = F.universe, F.skeleton
    nodes = sorted(sk.nodes, key=repr)
    return [
        (lambda x=x, y=y: U.is_disjoint(F.leaf(x), F.leaf(y)))
        for i, x in enumerate(nodes) for y in nodes[i + 1:]
        if sk.incomparable(x, y)
    ]


def locally_strict_at(F: FoliageTree, x) -> bool:
    """leaf(x) is the disjoint union of its sons' leaves."""
    U = F.universe
    sons = sorted(F.skeleton.sons_of(x), key=repr)
    if not U.equal(F.leaf(x), U.union_all(F.leaf(s) for s in sons)):
        return False
    return all(
        U.is_disjoint(F.leaf(a), F.leaf(b))
        for i, a in enumerate(sons) for b in sons[i + 1:]
    )


def foliage_flags(F: FoliageTree, strict: bool = False) -> FoliageFlags:
    U, sk = F.universe, F.skeleton
    branches = sorted(sk.branches_of(), key=lambda b: sorted(map(repr, b)))
    interior = [x for x in sk.nodes if sk.sons_of(x) and x not in sk.frontier]

    flags = FoliageFlags(
        nonempty_leaves=_all([(lambda x=x: not U.is_empty(F.leaf(x))) for x in sk.nodes], strict),
        nonincreasing=_all(nonincreasing_checks(F), strict),
        splittable=_all(splittable_checks(F), strict),
        complete=bool(sk.nodes) and _all(
            [(lambda b=b: not U.is_empty(fruit_of(F, b))) for b in branches], strict),
        strict_branches=bool(sk.nodes) and _all(
            [(lambda b=b: U.is_singleton(fruit_of(F, b))) for b in branches], strict),
        locally_strict=_all([(lambda x=x: locally_strict_at(F, x)) for x in interior], strict),
        open_in_universe=_all([(lambda x=x: U.is_open(F.leaf(x))) for x in sk.nodes], strict),
    )
    logger.debug(f"foliage flags for {F!r}: {flags}")
    return flags


def grows_into(F: FoliageTree, Y, depth: int, width: int) -> bool:
    """
    Truncated 'grows into Y' over the universe's neighborhood base.

    For every point p of Y and every base neighborhood U of p inside Y, some
    z in scope(p) must have materialized sons, all with nonempty leaves
    contained in U.  Uses the universe's point and base enumerators at its
    own truncation; ``depth``/``width`` bound the shoot enumeration.

    Raises:
        UndecidableAtDepthError: no witness found and the scope reaches the
            truncation frontier.
    """
    U = F.universe
    if U.is_empty(Y):
        return True
    for p in U.points(Y):
        scope = sorted(scope_of(F, p), key=repr)
        for label, nbhd in U.base_neighborhoods(p, Y):
            if U.is_empty(nbhd):
                continue
            if _has_shoot_witness(F, scope, nbhd, width):
                continue
            if any(z in F.skeleton.frontier for z in scope):
                raise UndecidableAtDepthError(
                    f"no shoot inside base set {label!r} before the frontier", depth)
            logger.info(f"grows_into fails at point {p!r}, base set {label!r}")
            return False
    return True


def _has_shoot_witness(F: FoliageTree, scope, nbhd, width: int) -> bool:
    U = F.universe
    for z in scope:
        shoot = shoot_of(F, z, width)
        if shoot.is_empty_family:
            continue
        if all(not U.is_empty(F.leaf(s)) and U.is_subset(F.leaf(s), nbhd) for s in shoot.sons):
            return True
    return False
