"""
FoliageTree — a tree skeleton with a leaf attached to every node.

Also defines the lazy foliage view protocol shared with the infinite
objects of the pipeline (standard tree, graft blueprints, lazy hybrids):
anything with ``universe``, ``root``, ``sons(x)``, ``parent_of(x)`` and
``leaf(x)`` can be fed to the shoot machinery.

Public API:
    FoliageView, FoliageTree, Shoot,
    fruit_of, flesh_of, yield_of, scope_of, shoot_of, shoot_family, pi_refines
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Protocol, runtime_checkable

from PiTree_Engine.errors import EmptyNodeSetError, InvalidTreeError, NodeNotFoundError
from PiTree_Engine.foliage.universe import LeafUniverse
from PiTree_Engine.trees.fintree import FinTree, sorted_nodes


@runtime_checkable
class FoliageView(Protocol):
    universe: LeafUniverse

    @property
    def root(self):
        ...

    def sons(self, x) -> Iterator:
        ...

    def parent_of(self, x):
        ...

    def leaf(self, x):
        ...


class FoliageTree:
    """
    Explicit foliage tree: FinTree skeleton + leaf map + universe.

    Raises:
        InvalidTreeError: the leaf map domain differs from the skeleton nodes.
    """

    def __init__(self, skeleton: FinTree, leaf: Mapping, universe: LeafUniverse):
        if set(leaf) != set(skeleton.nodes):
            missing = set(skeleton.nodes) - set(leaf)
            extra = set(leaf) - set(skeleton.nodes)
            raise InvalidTreeError(f"Leaf map mismatch: missing={sorted_nodes(missing)}, extra={sorted_nodes(extra)}")
        self.skeleton = skeleton
        self.universe = universe
        self._leaf = dict(leaf)

    def __repr__(self) -> str:
        return f"FoliageTree({len(self.skeleton)} nodes, universe={self.universe.name})"

    @property
    def nodes(self) -> frozenset:
        return self.skeleton.nodes

    @property
    def root(self):
        return self.skeleton.least_node()

    def sons(self, x) -> Iterator:
        return iter(sorted_nodes(self.skeleton.sons_of(x)))

    def parent_of(self, x):
        return self.skeleton.parent_of(x)

    def leaf(self, x):
        if x not in self._leaf:
            raise NodeNotFoundError(x, "foliage tree")
        return self._leaf[x]

    @property
    def leaf_map(self) -> dict:
        return dict(self._leaf)

    def with_leaves(self, leaf: Mapping) -> "FoliageTree":
        return FoliageTree(self.skeleton, leaf, self.universe)

    def to_dict(self) -> dict:
        """Tree JSON schema extended with a "leaf" per node."""
        data = self.skeleton.to_dict()
        order = sorted_nodes(self.skeleton.nodes)
        for row, x in zip(data["nodes"], order):
            row["leaf"] = self.universe.describe(self._leaf[x])
        return data


# ---------------------------------------------------------------------------
# Fruit / flesh / yield / scope
# ---------------------------------------------------------------------------

def fruit_of(F: FoliageTree, nodes: Iterable):
    nodes = list(nodes)
    if not nodes:
        raise EmptyNodeSetError("fruit of an empty node set is undefined")
    return F.universe.intersect_all(F.leaf(x) for x in nodes)


def flesh_of(F: FoliageTree, nodes: Iterable | None = None):
    nodes = F.nodes if nodes is None else nodes
    return F.universe.union_all(F.leaf(x) for x in nodes)


def yield_of(F: FoliageTree):
    return F.universe.union_all(fruit_of(F, b) for b in F.skeleton.branches_of())


def scope_of(F: FoliageTree, point) -> frozenset:
    return frozenset(x for x in F.nodes if F.universe.contains(F.leaf(x), point))


# ---------------------------------------------------------------------------
# Shoots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Shoot:
    """
    Implicit shoot family of a node: unions of leaves over cofinite subsets
    of its sons.  ``flesh`` is the union over all enumerated sons and
    ``exception_budget`` bounds how many sons a member may leave out.
    """

    node: object
    sons: tuple
    flesh: object
    exception_budget: int

    @property
    def is_empty_family(self) -> bool:
        return not self.sons


def shoot_of(F: FoliageView, z, width: int) -> Shoot:
    sons = []
    for s in F.sons(z):
        if len(sons) >= width:
            break
        sons.append(s)
    flesh = F.universe.union_all(F.leaf(s) for s in sons)
    return Shoot(node=z, sons=tuple(sons), flesh=flesh, exception_budget=len(sons))


def shoot_family(F: FoliageTree, z) -> list:
    """Extensional shoot of a node of a finite tree: fleshes of all son subsets."""
    sons = sorted_nodes(F.skeleton.sons_of(z))
    if not sons:
        return [F.universe.empty()]
    out = []
    for k in range(len(sons) + 1):
        for combo in combinations(sons, k):
            out.append(F.universe.union_all(F.leaf(s) for s in combo))
    return out


def pi_refines(gamma: Iterable, delta: Iterable, universe: LeafUniverse) -> bool:
    """γ ≫ δ: every nonempty member of δ contains a nonempty member of γ."""
    gamma = [g for g in gamma if not universe.is_empty(g)]
    for d in delta:
        if universe.is_empty(d):
            continue
        if not any(universe.is_subset(g, d) for g in gamma):
            return False
    return True
