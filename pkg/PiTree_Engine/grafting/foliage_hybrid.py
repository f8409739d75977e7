"""
Foliage grafts, foliage families with their loss, and the foliage hybrid.

A foliage graft for a nonincreasing foliage tree F is a nonincreasing
foliage tree G whose skeleton is a graft for F's skeleton, whose root leaf
sits inside F's, and which agrees with F on its maximal nodes.  The cut is
what G drops at its root; the loss of a family is the union of its cuts,
and the foliage hybrid removes the loss from every leaf.

Usage:
    check = foliage_graft_check(F, G)
    fam = foliage_family(F, [G1, G2])
    H = foliage_hybrid_build(F, fam)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from PiTree_Engine.errors import (
    HostNotNonincreasingError,
    InconsistentFamilyError,
    InconsistentFoliageFamilyError,
)
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.predicates import nonincreasing_checks
from PiTree_Engine.grafting.anatomy import ConsistentFamily, consistent_family, graft_anatomy
from PiTree_Engine.grafting.hybrid import Graft, hybrid_build
from PiTree_Engine.trees.fintree import sorted_nodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FoliageGraftCheck:
    is_foliage_graft: bool
    cut: object
    violations: tuple[str, ...] = field(default_factory=tuple)


def _nonincreasing(F: FoliageTree) -> bool:
    return all(check() for check in nonincreasing_checks(F))


def foliage_graft_check(F: FoliageTree, G: FoliageTree) -> FoliageGraftCheck:
    """
    Raises:
        HostNotNonincreasingError: F itself is not nonincreasing.
    """
    if not _nonincreasing(F):
        raise HostNotNonincreasingError("foliage grafts need a nonincreasing host")
    U = F.universe
    bad: list[str] = []
    if not _nonincreasing(G):
        bad.append("(a) graft is not nonincreasing")
    anatomy = graft_anatomy(F.skeleton, G.skeleton)
    bad.extend(f"(b) skeleton: {v}" for v in anatomy.violations)

    root = anatomy.root
    cut = U.empty()
    if root is not None and root in F.nodes:
        if not U.is_subset(G.leaf(root), F.leaf(root)):
            bad.append(f"(c) root leaf of the graft is not inside the host leaf at {root!r}")
        cut = U.difference(F.leaf(root), G.leaf(root))
    for m in sorted_nodes(anatomy.maxel):
        if m in F.nodes and not U.equal(G.leaf(m), F.leaf(m)):
            bad.append(f"(d) leaves differ at maximal node {m!r}")
    return FoliageGraftCheck(not bad, cut, tuple(bad))


@dataclass(frozen=True)
class FoliageFamily:
    host: FoliageTree
    grafts: tuple[FoliageTree, ...]
    family: ConsistentFamily
    cuts: tuple
    loss: object


def foliage_family(F: FoliageTree, grafts: Sequence[FoliageTree]) -> FoliageFamily:
    """
    Raises:
        InconsistentFoliageFamilyError: a clause of family consistency fails.
    """
    bad: list[str] = []
    checks = [foliage_graft_check(F, G) for G in grafts]
    for k, check in enumerate(checks):
        bad.extend(f"(a) graft {k}: {v}" for v in check.violations)
    for j in range(len(grafts)):
        for k in range(j + 1, len(grafts)):
            if grafts[j].skeleton == grafts[k].skeleton:
                bad.append(f"(b) grafts {j} and {k} have the same skeleton")
    if bad:
        raise InconsistentFoliageFamilyError(bad[0], bad)
    try:
        family = consistent_family(F.skeleton, [G.skeleton for G in grafts])
    except InconsistentFamilyError as exc:
        raise InconsistentFoliageFamilyError(f"(c) {exc}", [f"(c) {exc}"])
    cuts = tuple(c.cut for c in checks)
    loss = F.universe.union_all(cuts)
    return FoliageFamily(F, tuple(grafts), family, cuts, loss)


def foliage_hybrid_build(F: FoliageTree, fam: FoliageFamily) -> FoliageTree:
    U = F.universe
    skeleton = hybrid_build(fam.family)
    leaf = {}
    for h in skeleton.nodes:
        if isinstance(h, Graft):
            leaf[h] = U.difference(fam.grafts[h.gid].leaf(h.node), fam.loss)
        else:
            leaf[h] = U.difference(F.leaf(h.node), fam.loss)
    logger.debug(f"foliage hybrid with {len(fam.grafts)} grafts over {len(skeleton)} nodes")
    return FoliageTree(skeleton, leaf, U)

