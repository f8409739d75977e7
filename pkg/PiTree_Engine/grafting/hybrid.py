"""
The hybrid of a host and a consistent graft family.

Hybrid nodes are tagged: Supp(s) for a support node of the host, and
Graft(gid, i) for an implant node i of graft ``gid``.  Roots and maximal
nodes of grafts are support nodes, so they are always Supp tags.

hybrid_relate implements the five cases of the hybrid order literally;
hybrid_build assembles the explicit tree from it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from PiTree_Engine.errors import InvalidHybridNodeError, NotABranchError
from PiTree_Engine.grafting.anatomy import ConsistentFamily, GraftAnatomy
from PiTree_Engine.trees.fintree import FinTree, Relation, sorted_nodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Supp:
    node: object

    def __repr__(self) -> str:
        return f"Supp({self.node!r})"


@dataclass(frozen=True)
class Graft:
    gid: int
    node: object

    def __repr__(self) -> str:
        return f"Graft({self.gid}, {self.node!r})"


HybridNode = Supp | Graft


def hybrid_nodes(family: ConsistentFamily) -> list[HybridNode]:
    out: list[HybridNode] = [Supp(s) for s in sorted_nodes(family.support)]
    for gid, a in enumerate(family.grafts):
        out.extend(Graft(gid, i) for i in sorted_nodes(a.implant))
    return out


def graft_node_image(family: ConsistentFamily, gid: int, x) -> HybridNode:
    """Hybrid node standing for node x of graft ``gid``."""
    a = family.grafts[gid]
    if x in a.implant:
        return Graft(gid, x)
    if x == a.root or x in a.maxel:
        return Supp(x)
    raise InvalidHybridNodeError(f"{x!r} is not a node of graft {gid}")


def in_graft(family: ConsistentFamily, gid: int, h: HybridNode):
    """The graft node behind h, or None if h is not a node of graft ``gid``."""
    a = family.grafts[gid]
    if isinstance(h, Graft):
        return h.node if h.gid == gid else None
    return h.node if (h.node == a.root or h.node in a.maxel) else None


def _validate(family: ConsistentFamily, h) -> None:
    if isinstance(h, Supp):
        if h.node not in family.support:
            raise InvalidHybridNodeError(f"{h!r} is not a support node")
        return
    if isinstance(h, Graft):
        if not 0 <= h.gid < len(family.grafts) or h.node not in family.grafts[h.gid].implant:
            raise InvalidHybridNodeError(f"{h!r} is not an implant node")
        return
    raise InvalidHybridNodeError(f"{h!r} is not a hybrid node")


def _below_root_of(host: FinTree, a: GraftAnatomy, i, t) -> bool:
    """t ∈ (maxel G)↓ in the host and i <_G root_T(t, maxel G)."""
    if not a.maxel or t not in host.footline(a.maxel, "down"):
        return False
    r = host.root_in_antichain(t, a.maxel)
    return a.graft.less(i, r)


def hybrid_less(family: ConsistentFamily, x: HybridNode, y: HybridNode) -> bool:
    host = family.host
    if isinstance(x, Supp) and isinstance(y, Supp):                      # (b1)
        return host.less(x.node, y.node)
    if isinstance(x, Graft) and isinstance(y, Graft) and x.gid == y.gid:  # (b2)
        return family.grafts[x.gid].graft.less(x.node, y.node)
    if isinstance(x, Supp) and isinstance(y, Graft):                     # (b3)
        root = family.grafts[y.gid].root
        return x.node == root or host.less(x.node, root)
    if isinstance(x, Graft) and isinstance(y, Supp):                     # (b4)
        return _below_root_of(host, family.grafts[x.gid], x.node, y.node)
    # (b5): implant nodes of two different grafts
    return _below_root_of(host, family.grafts[x.gid], x.node, family.grafts[y.gid].root)


def hybrid_relate(family: ConsistentFamily, x: HybridNode, y: HybridNode) -> Relation:
    """
    Raises:
        InvalidHybridNodeError: x or y is not a node of the hybrid.
    """
    _validate(family, x)
    _validate(family, y)
    if x == y:
        return Relation.EQUAL
    if hybrid_less(family, x, y):
        return Relation.LESS
    if hybrid_less(family, y, x):
        return Relation.GREATER
    return Relation.INCOMPARABLE


def hybrid_build(family: ConsistentFamily) -> FinTree:
    """
    Explicit hybrid tree.  Each node's parent is its predecessor with the
    most predecessors; host and implant frontiers carry over.
    """
    nodes = hybrid_nodes(family)
    below: dict = {y: [x for x in nodes if x != y and hybrid_less(family, x, y)] for y in nodes}
    parent = {}
    for y in nodes:
        preds = below[y]
        parent[y] = max(preds, key=lambda p: len(below[p])) if preds else None

    frontier = [Supp(s) for s in family.host.frontier if s in family.support and s not in family.roots]
    for gid, a in enumerate(family.grafts):
        frontier.extend(Graft(gid, i) for i in a.graft.frontier if i in a.implant)
    labels = {Supp(s): family.host.label_of(s) for s in family.support if family.host.label_of(s) is not None}
    logger.debug(f"hybrid of {len(family.grafts)} grafts: {len(nodes)} nodes")
    return FinTree(parent, labels, frontier)


def to_hybrid_nodes(family: ConsistentFamily, gid: int, xs: Iterable) -> frozenset:
    return frozenset(graft_node_image(family, gid, x) for x in xs)


# ---------------------------------------------------------------------------
# Branches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchTrace:
    per_graft: dict
    support_part: frozenset


def branch_trace(family: ConsistentFamily, B: Iterable, hybrid: FinTree | None = None) -> BranchTrace:
    """
    Split a hybrid branch into its trace on every graft it meets and its
    support part.

    Raises:
        NotABranchError: B is not a branch of the hybrid.
    """
    hybrid = hybrid_build(family) if hybrid is None else hybrid
    B = frozenset(B)
    if B not in hybrid.branches_of():
        raise NotABranchError(f"{sorted_nodes(B)!r} is not a branch of the hybrid")
    per_graft = {}
    for gid in range(len(family.grafts)):
        chain = frozenset(x for x in (in_graft(family, gid, h) for h in B) if x is not None)
        if chain:
            per_graft[gid] = chain
    return BranchTrace(per_graft, frozenset(h for h in B if isinstance(h, Supp)))
