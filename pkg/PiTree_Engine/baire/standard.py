"""
The standard foliage tree S: finite sequences under ⊂, leaf(x) = S_x.

StdTreeView is the lazy (infinite) presentation used by the pipeline;
std_tree materializes its truncation ^{<depth}width as an explicit
FoliageTree whose last level is the skeleton frontier.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import count, product
from typing import Iterator

from PiTree_Engine.baire.setexpr import Cylinder, SetExpr
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.errors import BadParametersError, NodeNotFoundError
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.trees.fintree import FinTree
from PiTree_Engine.trees.seq import Seq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StdTreeView:
    depth: int
    width: int
    universe: BaireUniverse = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.depth < 1 or self.width < 1:
            raise BadParametersError(f"standard tree needs depth, width >= 1 (got {self.depth}, {self.width})")
        object.__setattr__(self, "universe", BaireUniverse(self.depth, self.width))

    @property
    def root(self) -> Seq:
        return ()

    def sons(self, x: Seq) -> Iterator[Seq]:
        x = tuple(x)
        return (x + (n,) for n in count())

    def parent_of(self, x: Seq) -> Seq | None:
        if not isinstance(x, tuple):
            raise NodeNotFoundError(x, "standard tree")
        return x[:-1] if x else None

    def leaf(self, x: Seq) -> SetExpr:
        return Cylinder(tuple(x))

    def box_nodes(self) -> list[Seq]:
        return [s for k in range(self.depth) for s in product(range(self.width), repeat=k)]


def std_tree(view: StdTreeView) -> FoliageTree:
    """Truncated S: skeleton (^{<depth}width, ⊂), frontier = the last level."""
    nodes = view.box_nodes()
    frontier = [s for s in nodes if len(s) == view.depth - 1]
    skeleton = FinTree.from_seqs(nodes, frontier=frontier)
    logger.debug(f"standard tree at depth={view.depth} width={view.width}: {len(nodes)} nodes")
    return FoliageTree(skeleton, {s: view.leaf(s) for s in nodes}, view.universe)
