"""
BaireUniverse — SetExpr leaves compared on a shadow stratum.

Equality and inclusion are decided on the stratum at (depth, width).
Disjointness is exact where the stratum settles it and otherwise searches up
to ``lookahead_depth`` further levels along the finitely many sons both sides
can still reach.  Singleton tests are never settled at finite depth.
"""

from __future__ import annotations

import logging

import numpy as np

from PiTree_Engine.baire.setexpr import (
    EMPTY,
    FULL,
    INSIDE,
    OUTSIDE,
    Cylinder,
    CylFamilyUnion,
    Diff,
    Empty,
    Full,
    Intersect,
    SetExpr,
    Union,
    classify,
    contains,
    expr_to_json,
    is_open,
    support_children,
)
from PiTree_Engine.baire.shadow import depth_shadow, stratum
from PiTree_Engine.config import LOOKAHEAD_DEPTH
from PiTree_Engine.errors import UndecidableAtDepthError
from PiTree_Engine.foliage.universe import LeafUniverse
from PiTree_Engine.trees.seq import Seq

logger = logging.getLogger(__name__)


class BaireUniverse(LeafUniverse):
    name = "baire"

    def __init__(self, depth: int, width: int, lookahead_depth: int = LOOKAHEAD_DEPTH):
        self.depth = depth
        self.width = width
        self.lookahead_depth = lookahead_depth

    def __repr__(self) -> str:
        return f"BaireUniverse(depth={self.depth}, width={self.width})"

    def shadow(self, a: SetExpr):
        return depth_shadow(a, self.depth, self.width)

    # -- constructors (with trivial simplification) -------------------------

    def empty(self) -> SetExpr:
        return EMPTY

    def full(self) -> SetExpr:
        return FULL

    def intersect(self, a: SetExpr, b: SetExpr) -> SetExpr:
        if isinstance(a, Empty) or isinstance(b, Full):
            return a
        if isinstance(b, Empty) or isinstance(a, Full) or a == b:
            return b
        return Intersect((a, b))

    def union(self, a: SetExpr, b: SetExpr) -> SetExpr:
        if isinstance(a, Empty) or isinstance(b, Full) or a == b:
            return b
        if isinstance(b, Empty) or isinstance(a, Full):
            return a
        left = a.args if isinstance(a, Union) else (a,)
        right = b.args if isinstance(b, Union) else (b,)
        return Union(left + tuple(r for r in right if r not in left))

    def difference(self, a: SetExpr, b: SetExpr) -> SetExpr:
        if isinstance(b, Empty) or isinstance(a, Empty):
            return a
        if isinstance(b, Full):
            return EMPTY
        return Diff(a, b)

    # -- tests ---------------------------------------------------------------

    def is_empty(self, a: SetExpr) -> bool:
        return self.shadow(a).is_empty()

    def is_subset(self, a: SetExpr, b: SetExpr) -> bool:
        return self.shadow(a).is_subset(self.shadow(b))

    def equal(self, a: SetExpr, b: SetExpr) -> bool:
        return self.shadow(a) == self.shadow(b)

    def is_disjoint(self, a: SetExpr, b: SetExpr) -> bool:
        """
        Raises:
            UndecidableAtDepthError: both sides stay Split through the lookahead.
        """
        if _known_disjoint(a, b):
            return True
        sa, sb = self.shadow(a), self.shadow(b)
        both = (sa.codes != int(OUTSIDE)) & (sb.codes != int(OUTSIDE))
        if not both.any():
            return True
        if np.any(both & ((sa.codes == int(INSIDE)) | (sb.codes == int(INSIDE)))):
            return False
        pending = [sa.node_at(int(i)) for i in np.flatnonzero(both)]
        for y in pending:
            if not self._search_disjoint(a, b, y, self.lookahead_depth):
                return False
        return True

    def _search_disjoint(self, a: SetExpr, b: SetExpr, y: Seq, budget: int) -> bool:
        ca, cb = classify(a, y), classify(b, y)
        if ca is OUTSIDE or cb is OUTSIDE:
            return True
        if ca is INSIDE or cb is INSIDE:
            return False
        if budget == 0:
            raise UndecidableAtDepthError(f"disjointness below {y} not settled", len(y))
        ka, kb = support_children(a, y), support_children(b, y)
        if ka is None and kb is None:
            raise UndecidableAtDepthError(f"both sides branch unboundedly at {y}", len(y))
        common = kb if ka is None else ka if kb is None else ka & kb
        return all(self._search_disjoint(a, b, y + (n,), budget - 1) for n in sorted(common))

    def is_singleton(self, a: SetExpr) -> bool:
        raise UndecidableAtDepthError("singleton test needs the whole infinite branch", self.depth)

    def contains(self, a: SetExpr, point) -> bool:
        return contains(a, point)

    def is_open(self, a: SetExpr) -> bool:
        return is_open(a)

    # -- point / neighborhood base ------------------------------------------

    def points(self, a: SetExpr) -> list[Seq]:
        """Stratum nodes whose zero-tail point lies in a."""
        return [y for y in stratum(self.depth, self.width) if contains(a, y)]

    def base_neighborhoods(self, point: Seq, a: SetExpr) -> list[tuple]:
        point = tuple(point) + (0,) * max(0, self.depth - len(point))
        return [(point[:k], self.intersect(Cylinder(point[:k]), a)) for k in range(self.depth + 1)]

    def describe(self, a: SetExpr):
        return expr_to_json(a)


def _known_disjoint(a: SetExpr, b: SetExpr) -> bool:
    # A \ L ⊆ A, so the left sides of differences decide
    while isinstance(a, Diff):
        a = a.left
    while isinstance(b, Diff):
        b = b.left
    return isinstance(a, CylFamilyUnion) and isinstance(b, CylFamilyUnion) and a.family.known_disjoint(b.family)
