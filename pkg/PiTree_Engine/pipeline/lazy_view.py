"""
LazyHybridView — the foliage hybrid of the standard tree with every
blueprint of a pipeline run, answered node by node.

Nodes are Supp(seq) for support sequences and Graft(stage, ImplantNode) for
implant nodes; the leaf of every node is its host or blueprint leaf minus
the loss.  materialize_pi_tree cuts the view down to an explicit
FoliageTree over (depth, width).

Usage:
    view = pipeline_run([CompactCode.point(())], 1).view
    list(islice(view.sons(view.root), 3))
    H = materialize_pi_tree(view, 5, 4)
"""

from __future__ import annotations

import logging
from itertools import count
from typing import Iterator

from PiTree_Engine.baire.setexpr import Cylinder, SetExpr
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.errors import InvalidHybridNodeError
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.grafting.hybrid import Graft, HybridNode, Supp
from PiTree_Engine.pipeline.blueprint import GraftBlueprint, ImplantNode, blueprint_box
from PiTree_Engine.pipeline.recursion import PipelineState, box_seqs
from PiTree_Engine.trees.fintree import FinTree
from PiTree_Engine.trees.seq import Seq, fmt_seq

logger = logging.getLogger(__name__)


class LazyHybridView:
    def __init__(self, state: PipelineState, depth: int | None = None, width: int | None = None):
        self.state = state
        self.depth = depth or state.universe.depth
        self.width = width or state.universe.width
        self.universe = BaireUniverse(self.depth, self.width, state.universe.lookahead_depth)
        self.loss = state.loss

    def __repr__(self) -> str:
        return f"LazyHybridView(stages={self.state.stage + 1}, depth={self.depth}, width={self.width})"

    # -- classification of standard-tree nodes ---------------------------------

    def root_blueprint(self, s: Seq) -> GraftBlueprint | None:
        n = self.state.root_stage(s)
        return None if n is None else self.state.blueprint(n, s)

    def explant_owner(self, s: Seq) -> GraftBlueprint | None:
        """The blueprint whose explant holds s, if any."""
        s = tuple(s)
        for k in range(len(s)):
            bp = self.root_blueprint(s[:k])
            if bp is not None and bp.in_delta(s):
                return bp
        return None

    def max_owner(self, s: Seq) -> GraftBlueprint | None:
        """The blueprint that has s as a maximal node, if any."""
        s = tuple(s)
        for k in range(len(s)):
            bp = self.root_blueprint(s[:k])
            if bp is not None and bp.is_max(s):
                return bp
        return None

    def is_support(self, s: Seq) -> bool:
        return self.explant_owner(s) is None

    def _validate(self, h) -> None:
        if isinstance(h, Supp):
            if not self.is_support(h.node):
                raise InvalidHybridNodeError(f"{fmt_seq(h.node)} was explanted")
        elif not (isinstance(h, Graft) and isinstance(h.node, ImplantNode) and h.gid == h.node.stage):
            raise InvalidHybridNodeError(f"{h!r} is not a node of the lazy hybrid")

    # -- foliage view --------------------------------------------------------------

    @property
    def root(self) -> HybridNode:
        return Supp(())

    def sons(self, h) -> Iterator[HybridNode]:
        self._validate(h)
        if isinstance(h, Graft):
            bp = self.state.blueprint(h.node.stage, h.node.root)
            for c in bp.sons(h.node):
                yield Graft(h.gid, c) if isinstance(c, ImplantNode) else Supp(c)
            return
        bp = self.root_blueprint(h.node)
        if bp is not None:
            for c in bp.sons(bp.v):
                yield Graft(bp.stage, c)
            return
        for n in count():
            yield Supp(h.node + (n,))

    def parent_of(self, h) -> HybridNode | None:
        self._validate(h)
        if isinstance(h, Graft):
            bp = self.state.blueprint(h.node.stage, h.node.root)
            p = bp.parent_of(h.node)
            return Graft(h.gid, p) if isinstance(p, ImplantNode) else Supp(p)
        s = h.node
        if not s:
            return None
        bp = self.max_owner(s)
        if bp is not None:
            return Graft(bp.stage, bp.parent_of(s))
        return Supp(s[:-1])

    def leaf(self, h) -> SetExpr:
        self._validate(h)
        U = self.universe
        if isinstance(h, Graft):
            bp = self.state.blueprint(h.node.stage, h.node.root)
            return U.difference(bp.leaf(h.node), self.loss)
        return U.difference(Cylinder(h.node), self.loss)


def materialize_pi_tree(view: LazyHybridView, depth: int | None = None, width: int | None = None) -> FoliageTree:
    """
    Explicit truncation: support sequences of length < depth with values
    < width, plus the visible implant nodes of every blueprint rooted among
    them.  Nodes without materialized sons form the frontier.
    """
    depth = depth or view.depth
    width = width or view.width
    state = view.state
    nodes: list[HybridNode] = [Supp(s) for s in box_seqs(depth - 1, width) if view.is_support(s)]
    for n in range(state.stage + 1):
        for r in state.roots(n, depth - 1, width):
            box = blueprint_box(state.blueprint(n, r), depth, width)
            nodes.extend(Graft(n, imp) for imp in box.implants)

    parent = {h: view.parent_of(h) for h in nodes}
    has_son = {p for p in parent.values() if p is not None}
    frontier = [h for h in nodes if h not in has_son]
    labels = {h: h.node for h in nodes if isinstance(h, Supp)}
    skeleton = FinTree(parent, labels, frontier)
    logger.info(f"materialized π-tree at depth={depth} width={width}: {len(nodes)} nodes, {len(frontier)} frontier")
    return FoliageTree(skeleton, {h: view.leaf(h) for h in nodes}, BaireUniverse(depth, width, view.universe.lookahead_depth))
