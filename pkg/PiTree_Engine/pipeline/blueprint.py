"""
GraftBlueprint — the lazy graft that trims an open set O ⊂ S_v out of the
standard tree below v.

Nodes of a blueprint are the root v, the maximal nodes (MAX, the minimal
sequences whose cylinder fits in O) and the implant nodes Imp(x, l) for x
in Δ (the sequences below v whose cylinder does not fit) and 0 ≤ l ≤ l(x),
where l(x) = len(x) - len(v).

The sons of x in Ω are split into fibers Ω_{x,d}, one per d ∈ Δ_x, with
Cantor pairing over two canonical enumerations:
    e_Ω(x)  sons of x inside O, by increasing last value
    e_Δ(x)  Δ nodes extending x, by length then lexicographically
The k-th son of x with unpair(k) = (i, j) belongs to the fiber of e_Δ(x)(i),
so every fiber is infinite.

Usage:
    bp = blueprint_build((), Diff(FULL, Compact(CompactCode.point(()))))
    bp.partition_enum((), (), 5)         # [(1,), (3,), (6,), (10,), (15,)]
    bp.partition_assign((0, 2))          # (0, 0)
    T = materialize_blueprint(bp, 4, 4)  # explicit truncation as a FoliageTree

Public API:
    ImplantNode, GraftBlueprint, FiberFamily, MaxFamily, Oracles, BlueprintBox,
    cantor_pair, cantor_unpair, omega_delta_max, blueprint_build,
    blueprint_sons, blueprint_leaf, blueprint_box, materialize_blueprint
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import count
from math import isqrt
from typing import Callable, Iterator, NamedTuple

from PiTree_Engine.baire.setexpr import (
    INSIDE,
    OUTSIDE,
    SPLIT,
    BairePoint,
    Classification,
    Cylinder,
    CylFamilyUnion,
    CylinderFamily,
    Intersect,
    SetExpr,
    classify,
    co_inside_children,
    contains,
    expr_to_json,
)
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.config import DEFAULT_DEPTH, DEFAULT_WIDTH
from PiTree_Engine.errors import (
    NodeNotFoundError,
    NotInOmegaError,
    NotProperSubsetError,
    PreconditionError,
    UndecidableAtDepthError,
)
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.trees.fintree import FinTree, sorted_nodes
from PiTree_Engine.trees.seq import Seq, common_prefix, fmt_seq, is_prefix, is_proper_prefix, seq_drop

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Cantor pairing
# ---------------------------------------------------------------------------

def cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_unpair(k: int) -> tuple[int, int]:
    w = (isqrt(8 * k + 1) - 1) // 2
    j = k - w * (w + 1) // 2
    return w - j, j


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImplantNode:
    """Imp(target, level) of the blueprint rooted at ``root`` in pipeline stage ``stage``."""

    stage: int
    root: Seq
    target: Seq
    level: int

    @property
    def anchor(self) -> Seq:
        """target_{-level}: the node whose sons this implant node carries."""
        return seq_drop(self.target, self.level)

    def __repr__(self) -> str:
        return f"Imp{self.stage}({fmt_seq(self.target)},{self.level})"


class Oracles(NamedTuple):
    omega: Callable[[Seq], bool]
    delta: Callable[[Seq], bool]
    max: Callable[[Seq], bool]


# ---------------------------------------------------------------------------
# The blueprint
# ---------------------------------------------------------------------------

class GraftBlueprint:
    """
    Lazy graft for the standard tree rooted at v with root leaf O.

    Raises:
        NotProperSubsetError: O covers S_v, or O is empty below v.
    """

    def __init__(self, v: Seq, O: SetExpr, stage: int = 0, universe: BaireUniverse | None = None):
        v = tuple(v)
        verdict = classify(O, v)
        if verdict is INSIDE:
            raise NotProperSubsetError(f"O covers the whole cylinder at {fmt_seq(v)}")
        if verdict is OUTSIDE:
            raise NotProperSubsetError(f"O has empty interior below {fmt_seq(v)}")
        self.v = v
        self.O = O
        self.stage = stage
        self.universe = universe or BaireUniverse(DEFAULT_DEPTH, DEFAULT_WIDTH)
        self._non_omega: dict[Seq, tuple[int, ...]] = {}
        self._delta_lists: dict[Seq, tuple[list[Seq], Iterator[Seq]]] = {}
        self._assigned: dict[Seq, Seq] = {}

    @property
    def key(self) -> tuple:
        return (self.stage, self.v, self.O)

    def __eq__(self, other) -> bool:
        return isinstance(other, GraftBlueprint) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"GraftBlueprint(stage={self.stage}, root={fmt_seq(self.v)})"

    # -- oracles -------------------------------------------------------------

    def in_omega(self, z: Seq) -> bool:
        return is_prefix(self.v, z) and classify(self.O, z) is INSIDE

    def in_delta(self, z: Seq) -> bool:
        return is_prefix(self.v, z) and classify(self.O, z) is not INSIDE

    def is_max(self, z: Seq) -> bool:
        z = tuple(z)
        return is_proper_prefix(self.v, z) and self.in_omega(z) and not self.in_omega(z[:-1])

    def level_of(self, x: Seq) -> int:
        return len(x) - len(self.v)

    def _require_delta(self, x: Seq) -> None:
        if not self.in_delta(x):
            raise PreconditionError(f"{fmt_seq(x)} is not in Δ of the blueprint at {fmt_seq(self.v)}")

    def _non_omega_sons(self, x: Seq) -> tuple[int, ...]:
        """Sorted last values of the sons of x outside Ω (finite for x ∈ Δ)."""
        if x not in self._non_omega:
            bound = co_inside_children(self.O, x)
            if bound is None:
                raise PreconditionError(f"Δ is not finitely branching at {fmt_seq(x)}")
            self._non_omega[x] = tuple(n for n in sorted(bound) if not self.in_omega(x + (n,)))
        return self._non_omega[x]

    def delta_sons(self, y: Seq) -> list[Seq]:
        return [y + (n,) for n in self._non_omega_sons(y)]

    # -- canonical enumerations ---------------------------------------------

    def omega_son(self, x: Seq, k: int) -> Seq:
        """e_Ω(x)(k): the k-th son of x inside O."""
        n = k
        for m in self._non_omega_sons(x):
            if m <= n:
                n += 1
        return x + (n,)

    def omega_index(self, x: Seq, z: Seq) -> int:
        """Position of z in e_Ω(x)."""
        if z[:-1] != x or not self.in_omega(z):
            raise NotInOmegaError(f"{fmt_seq(z)} is not a son of {fmt_seq(x)} inside O")
        n = z[-1]
        return n - sum(1 for m in self._non_omega_sons(x) if m < n)

    def _delta_walk(self, x: Seq) -> Iterator[Seq]:
        layer = [x]
        while layer:
            yield from layer
            layer = [c for y in layer for c in self.delta_sons(y)]

    def delta_member(self, x: Seq, i: int) -> Seq:
        """e_Δ(x)(i)."""
        if x not in self._delta_lists:
            self._delta_lists[x] = ([], self._delta_walk(x))
        seen, walk = self._delta_lists[x]
        while len(seen) <= i:
            try:
                seen.append(next(walk))
            except StopIteration:
                raise PreconditionError(f"Δ above {fmt_seq(x)} is finite ({len(seen)} nodes)")
        return seen[i]

    def delta_index(self, x: Seq, d: Seq) -> int:
        """Position of d in e_Δ(x)."""
        if not is_prefix(x, d) or not self.in_delta(d):
            raise PreconditionError(f"{fmt_seq(d)} is not in Δ_{fmt_seq(x)}")
        for i in count():
            e = self.delta_member(x, i)
            if e == d:
                return i
            if len(e) > len(d):
                break
        raise PreconditionError(f"{fmt_seq(d)} not reached by the Δ enumeration at {fmt_seq(x)}")

    def delta_enum(self, x: Seq) -> Iterator[Seq]:
        for i in count():
            try:
                yield self.delta_member(x, i)
            except PreconditionError:
                return

    # -- the partition of Ω_x -------------------------------------------------

    def partition_assign(self, z: Seq) -> Seq:
        """
        The d ∈ Δ_x whose fiber Ω_{x,d} holds z, where x = z minus its last entry.

        Raises:
            NotInOmegaError: z is not a maximal node of the blueprint.
        """
        z = tuple(z)
        if z in self._assigned:
            return self._assigned[z]
        if not self.is_max(z):
            raise NotInOmegaError(f"{fmt_seq(z)} is not in Ω_x for any x ∈ Δ")
        x = z[:-1]
        i, _ = cantor_unpair(self.omega_index(x, z))
        d = self.delta_member(x, i)
        self._assigned[z] = d
        return d

    def partition_enum(self, x: Seq, d: Seq, count_: int) -> list[Seq]:
        """First ``count_`` members of Ω_{x,d}."""
        self._require_delta(x)
        i = self.delta_index(x, d)
        return [self.omega_son(x, cantor_pair(i, j)) for j in range(count_)]

    def fiber_iter(self, x: Seq, d: Seq) -> Iterator[Seq]:
        i = self.delta_index(x, d)
        for j in count():
            yield self.omega_son(x, cantor_pair(i, j))

    def in_fiber(self, z: Seq, target: Seq) -> bool:
        return self.is_max(z) and self.partition_assign(z) == target

    # -- tree structure -------------------------------------------------------

    def implant(self, x: Seq, level: int) -> ImplantNode:
        return ImplantNode(self.stage, self.v, tuple(x), level)

    def _check_node(self, node) -> None:
        if isinstance(node, ImplantNode):
            if (node.stage, node.root) != (self.stage, self.v) or not 0 <= node.level <= self.level_of(node.target) \
                    or not self.in_delta(node.target):
                raise NodeNotFoundError(node, repr(self))
        elif tuple(node) != self.v and not self.is_max(tuple(node)):
            raise NodeNotFoundError(node, repr(self))

    @property
    def root(self) -> Seq:
        return self.v

    def sons(self, node) -> Iterator:
        self._check_node(node)
        if isinstance(node, ImplantNode):
            if node.level >= 1:
                yield self.implant(node.target, node.level - 1)
            yield from self.fiber_iter(node.anchor, node.target)
        elif tuple(node) == self.v:
            for x in self.delta_enum(self.v):
                yield self.implant(x, self.level_of(x))

    def parent_of(self, node):
        self._check_node(node)
        if isinstance(node, ImplantNode):
            if node.level == self.level_of(node.target):
                return self.v
            return self.implant(node.target, node.level + 1)
        z = tuple(node)
        if z == self.v:
            return None
        d = self.partition_assign(z)
        return self.implant(d, len(d) - len(z) + 1)

    def leaf(self, node) -> SetExpr:
        self._check_node(node)
        if isinstance(node, ImplantNode):
            return CylFamilyUnion(FiberFamily(self, node.target, node.level))
        z = tuple(node)
        return self.O if z == self.v else Cylinder(z)

    def max_union(self) -> SetExpr:
        """⊔_{z ∈ MAX} S_z as an expression."""
        return CylFamilyUnion(MaxFamily(self))

    def cut(self) -> SetExpr:
        return self.universe.difference(Cylinder(self.v), self.O)


# ---------------------------------------------------------------------------
# Cylinder families backed by a blueprint
# ---------------------------------------------------------------------------

class FiberFamily(CylinderFamily):
    """
    Members of Ω_{target_{-j}, target} for 0 ≤ j ≤ level: the leaf of
    Imp(target, level).  Classification is exact.
    """

    def __init__(self, bp: GraftBlueprint, target: Seq, level: int):
        self.bp = bp
        self.target = tuple(target)
        self.level = level

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberFamily) and (self.bp.key, self.target, self.level) == (
            other.bp.key, other.target, other.level)

    def __hash__(self) -> int:
        return hash((self.bp.key, self.target, self.level))

    def __repr__(self) -> str:
        return f"FiberFamily({fmt_seq(self.target)}, {self.level})"

    @property
    def _shortest_anchor(self) -> int:
        return len(self.target) - self.level

    def classify_at(self, y: Seq) -> Classification:
        y = tuple(y)
        if is_prefix(y, self.target):
            return SPLIT
        t = len(common_prefix([self.target, y]))
        if t < self._shortest_anchor:
            return OUTSIDE
        return INSIDE if self.bp.in_fiber(y[:t + 1], self.target) else OUTSIDE

    def is_member(self, z: Seq) -> bool:
        z = tuple(z)
        if not z:
            return False
        w = z[:-1]
        return is_prefix(w, self.target) and len(w) >= self._shortest_anchor and self.bp.in_fiber(z, self.target)

    def member_below(self, point: BairePoint) -> bool | None:
        head = point.expand(len(self.target) + 1)
        if head is None:
            verdict = self.classify_at(point.prefix)
            return None if verdict is SPLIT else verdict is INSIDE
        return self.classify_at(head) is INSIDE

    def support_children(self, x: Seq) -> frozenset[int] | None:
        verdict = self.classify_at(x)
        if verdict is INSIDE:
            return None
        if verdict is OUTSIDE:
            return frozenset()
        if len(x) >= self._shortest_anchor:
            return None
        return frozenset({self.target[len(x)]})

    def co_inside_children(self, x: Seq) -> frozenset[int] | None:
        return frozenset() if self.classify_at(x) is INSIDE else None

    def known_disjoint(self, other: CylinderFamily) -> bool:
        # every maximal node is assigned to exactly one target
        return isinstance(other, FiberFamily) and other.bp.key == self.bp.key and other.target != self.target

    def members(self, limit: int) -> Iterator[Seq]:
        found = []
        for j in range(self.level + 1):
            found.extend(self.bp.partition_enum(seq_drop(self.target, j), self.target, limit))
        return iter(sorted_nodes(found)[:limit])

    def to_json(self) -> dict:
        return {
            "op": "fiber",
            "stage": self.bp.stage,
            "root": list(self.bp.v),
            "target": list(self.target),
            "level": self.level,
        }


class MaxFamily(CylinderFamily):
    """The maximal nodes of a blueprint as a cylinder family."""

    def __init__(self, bp: GraftBlueprint):
        self.bp = bp

    def __eq__(self, other) -> bool:
        return isinstance(other, MaxFamily) and self.bp.key == other.bp.key

    def __hash__(self) -> int:
        return hash(("max", self.bp.key))

    def classify_at(self, y: Seq) -> Classification:
        y = tuple(y)
        if is_proper_prefix(y, self.bp.v):
            return SPLIT
        if not is_prefix(self.bp.v, y):
            return OUTSIDE
        return INSIDE if self.bp.in_omega(y) else SPLIT

    def is_member(self, z: Seq) -> bool:
        return self.bp.is_max(z)

    def member_below(self, point: BairePoint) -> bool | None:
        try:
            return contains(Intersect((Cylinder(self.bp.v), self.bp.O)), point)
        except UndecidableAtDepthError:
            return None

    def support_children(self, x: Seq) -> frozenset[int] | None:
        x = tuple(x)
        if is_proper_prefix(x, self.bp.v):
            return frozenset({self.bp.v[len(x)]})
        if not is_prefix(self.bp.v, x):
            return frozenset()
        return None

    def co_inside_children(self, x: Seq) -> frozenset[int] | None:
        x = tuple(x)
        if not is_prefix(self.bp.v, x):
            return None
        if self.bp.in_omega(x):
            return frozenset()
        return frozenset(self.bp._non_omega_sons(x))

    def members(self, limit: int) -> Iterator[Seq]:
        out = []
        for x in self.bp.delta_enum(self.bp.v):
            for k in range(limit):
                out.append(self.bp.omega_son(x, k))
            if len(out) >= limit:
                break
        return iter(out[:limit])

    def to_json(self) -> dict:
        return {"op": "max", "stage": self.bp.stage, "root": list(self.bp.v), "O": expr_to_json(self.bp.O)}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def omega_delta_max(v: Seq, O: SetExpr) -> Oracles:
    """
    Raises:
        NotProperSubsetError: classify(O, v) is not Split.
    """
    bp = GraftBlueprint(v, O)
    return Oracles(bp.in_omega, bp.in_delta, bp.is_max)


def blueprint_build(v: Seq, O: SetExpr, stage: int = 0, universe: BaireUniverse | None = None) -> GraftBlueprint:
    bp = GraftBlueprint(v, O, stage, universe)
    logger.debug(f"blueprint built at {fmt_seq(bp.v)} (stage {stage})")
    return bp


def blueprint_sons(bp: GraftBlueprint, node) -> Iterator:
    return bp.sons(node)


def blueprint_leaf(bp: GraftBlueprint, node) -> SetExpr:
    return bp.leaf(node)


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlueprintBox:
    """
    What a blueprint shows on the stratum at (depth, width).

    delta:    Δ nodes with length ≤ depth and values < width
    maxes:    MAX members with length ≤ depth and values < width
    targets:  Δ nodes whose Imp chain can show up on the stratum
    implants: Imp nodes with an anchor shorter than depth and a nonempty shadow
    """

    delta: tuple
    maxes: tuple
    targets: tuple
    implants: tuple


def blueprint_box(bp: GraftBlueprint, depth: int, width: int) -> BlueprintBox:
    U = BaireUniverse(depth, width, bp.universe.lookahead_depth)
    if len(bp.v) > depth or any(n >= width for n in bp.v):
        return BlueprintBox((), (), (), ())
    delta, maxes = [bp.v], []
    layer = [bp.v]
    while layer:
        nxt = []
        for y in layer:
            if len(y) >= depth:
                continue
            for n in range(width):
                c = y + (n,)
                (nxt if bp.in_delta(c) else maxes).append(c)
        delta.extend(nxt)
        layer = nxt

    targets = sorted_nodes(set(delta) | {bp.partition_assign(z) for z in maxes})
    implants = []
    for x in targets:
        for level in range(bp.level_of(x) + 1):
            if len(x) - level > depth - 1:
                continue
            node = bp.implant(x, level)
            if not U.is_empty(bp.leaf(node)):
                implants.append(node)
    logger.debug(f"blueprint box at {fmt_seq(bp.v)}: {len(delta)} Δ, {len(maxes)} MAX, {len(implants)} implants")
    return BlueprintBox(tuple(delta), tuple(maxes), tuple(targets), tuple(implants))


def materialize_blueprint(bp: GraftBlueprint, depth: int, width: int) -> FoliageTree:
    """
    Explicit truncation over (depth, width): the root, MAX members shorter
    than depth, and the visible implant nodes.  Implant nodes with no
    materialized son form the frontier.
    """
    box = blueprint_box(bp, depth, width)
    kept_max = [z for z in box.maxes if len(z) <= depth - 1]
    nodes = [bp.v, *kept_max, *box.implants]
    parent = {x: bp.parent_of(x) for x in nodes}
    has_son = {p for p in parent.values() if p is not None}
    frontier = [x for x in box.implants if x not in has_son]
    if len(nodes) == 1:
        frontier = [bp.v]
    labels = {x: x for x in nodes if not isinstance(x, ImplantNode)}
    skeleton = FinTree(parent, labels, frontier)
    return FoliageTree(skeleton, {x: bp.leaf(x) for x in nodes}, BaireUniverse(depth, width, bp.universe.lookahead_depth))
