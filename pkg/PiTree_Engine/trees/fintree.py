"""
FinTree — explicit finite trees stored as parent maps.

Every order query of a set-theoretic tree is derived from the parent map:
x < y iff x is a proper ancestor of y.  Node ids are opaque hashables;
Seq labels are optional and never take part in equality of nodes.

A tree may carry a truncation ``frontier``: nodes whose sons were cut off
when an infinite tree was materialized.  Frontier nodes are terminal in the
finite tree but are not counted as maximal.

Public API:
    Relation, Region, FinTree, node_sort_key
"""

from __future__ import annotations

from enum import Enum
from typing import Hashable, Iterable, Mapping

from PiTree_Engine.errors import (
    InvalidTreeError,
    NodeNotFoundError,
    NotAntichainError,
    NotBelowAntichainError,
)
from PiTree_Engine.trees.seq import Seq

Node = Hashable


class Relation(str, Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


OrderQueryResult = Relation


class Region(str, Enum):
    UP = "up"
    DOWN = "down"
    UP_CLOSED = "up-closed"
    DOWN_CLOSED = "down-closed"


def node_sort_key(node) -> tuple:
    """Deterministic order over mixed node ids (ints, Seqs, tagged tuples)."""
    if isinstance(node, bool):
        return (3, repr(node))
    if isinstance(node, int):
        return (0, node)
    if isinstance(node, tuple) and all(isinstance(v, int) and not isinstance(v, bool) for v in node):
        return (1, len(node), node)
    return (2, repr(node))


def sorted_nodes(nodes: Iterable) -> list:
    return sorted(nodes, key=node_sort_key)


class FinTree:
    """
    Immutable finite tree (forest) over opaque node ids.

    Args:
        parent: node -> parent node, or None for roots.  Every node appears
            as a key.
        labels: optional node -> Seq.
        frontier: nodes whose sons were truncated away.

    Raises:
        InvalidTreeError: dangling parent, cycle, or frontier node with sons.
    """

    __slots__ = ("_parent", "_labels", "_frontier", "_ancestors", "_children", "_nodes")

    def __init__(
        self,
        parent: Mapping[Node, Node | None],
        labels: Mapping[Node, Seq] | None = None,
        frontier: Iterable[Node] = (),
    ):
        self._parent = dict(parent)
        self._nodes = frozenset(self._parent)
        for x, p in self._parent.items():
            if p is not None and p not in self._nodes:
                raise InvalidTreeError(f"Parent {p!r} of {x!r} is not a node.")

        self._ancestors: dict[Node, tuple] = {}
        for x in self._parent:
            self._chain_of(x)

        children: dict[Node, set] = {x: set() for x in self._nodes}
        for x, p in self._parent.items():
            if p is not None:
                children[p].add(x)
        self._children = {x: frozenset(c) for x, c in children.items()}

        self._labels = dict(labels or {})
        for x in self._labels:
            if x not in self._nodes:
                raise InvalidTreeError(f"Label given for unknown node {x!r}.")

        self._frontier = frozenset(frontier)
        for x in self._frontier:
            if x not in self._nodes:
                raise InvalidTreeError(f"Frontier node {x!r} is not a node.")
            if self._children[x]:
                raise InvalidTreeError(f"Frontier node {x!r} has materialized sons.")

    def _chain_of(self, x) -> tuple:
        # root-first tuple of strict ancestors
        if x in self._ancestors:
            return self._ancestors[x]
        path = []
        seen = {x}
        cur = self._parent[x]
        while cur is not None:
            if cur in seen:
                raise InvalidTreeError(f"Parent map has a cycle through {cur!r}.")
            if cur in self._ancestors:
                path.extend(reversed((*self._ancestors[cur], cur)))
                break
            seen.add(cur)
            path.append(cur)
            cur = self._parent[cur]
        chain = tuple(reversed(path))
        self._ancestors[x] = chain
        return chain

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    @property
    def frontier(self) -> frozenset:
        return self._frontier

    @property
    def parent_map(self) -> dict:
        return dict(self._parent)

    @property
    def labels(self) -> dict:
        return dict(self._labels)

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, x) -> bool:
        return x in self._nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinTree):
            return NotImplemented
        return (
            self._parent == other._parent
            and self._labels == other._labels
            and self._frontier == other._frontier
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._parent.items()), self._frontier))

    def __repr__(self) -> str:
        return f"FinTree({len(self._nodes)} nodes, roots={sorted_nodes(self.minel())})"

    def _check(self, *xs) -> None:
        for x in xs:
            if x not in self._nodes:
                raise NodeNotFoundError(x)

    def parent_of(self, x):
        self._check(x)
        return self._parent[x]

    def label_of(self, x) -> Seq | None:
        self._check(x)
        return self._labels.get(x)

    def ancestors(self, x) -> tuple:
        """Strict ancestors of x, root first."""
        self._check(x)
        return self._ancestors[x]

    # ------------------------------------------------------------------
    # Order queries
    # ------------------------------------------------------------------

    def less(self, x, y) -> bool:
        self._check(x, y)
        return x != y and x in self._ancestors[y]

    def relate(self, x, y) -> Relation:
        self._check(x, y)
        if x == y:
            return Relation.EQUAL
        if x in self._ancestors[y]:
            return Relation.LESS
        if y in self._ancestors[x]:
            return Relation.GREATER
        return Relation.INCOMPARABLE

    def incomparable(self, x, y) -> bool:
        return self.relate(x, y) is Relation.INCOMPARABLE

    def region(self, x, kind: Region | str) -> frozenset:
        """Strict/closed ancestors (up) or descendants (down) of x."""
        self._check(x)
        kind = Region(kind)
        if kind in (Region.UP, Region.UP_CLOSED):
            out = set(self._ancestors[x])
        else:
            out = {y for y in self._nodes if x in self._ancestors[y]}
        if kind in (Region.UP_CLOSED, Region.DOWN_CLOSED):
            out.add(x)
        return frozenset(out)

    def footline(self, nodes: Iterable, direction: str = "down") -> frozenset:
        """Union of the closed regions over ``nodes``; direction 'up' or 'down'."""
        kind = Region.DOWN_CLOSED if direction == "down" else Region.UP_CLOSED
        out: set = set()
        for a in nodes:
            out |= self.region(a, kind)
        return frozenset(out)

    def interval(self, x, y, closed: bool = False) -> frozenset:
        """(x, y) or [x, y]: nodes between x and y in the tree order."""
        self._check(x, y)
        if not (x == y or self.less(x, y)):
            return frozenset({x}) if closed and x == y else frozenset()
        chain = self._ancestors[y]
        inner = chain[chain.index(x) + 1:] if x != y else ()
        out = set(inner)
        if closed:
            out |= {x, y}
        return frozenset(out)

    def sons_of(self, x) -> frozenset:
        self._check(x)
        return self._children[x]

    def height_of(self, x) -> int:
        self._check(x)
        return len(self._ancestors[x])

    def levels(self) -> dict[int, frozenset]:
        out: dict[int, set] = {}
        for x in self._nodes:
            out.setdefault(len(self._ancestors[x]), set()).add(x)
        return {h: frozenset(v) for h, v in sorted(out.items())}

    def tree_height(self) -> int:
        """Least h with an empty level."""
        if not self._nodes:
            return 0
        return 1 + max(len(chain) for chain in self._ancestors.values())

    # ------------------------------------------------------------------
    # Extremal sets, chains, branches
    # ------------------------------------------------------------------

    def terminal_nodes(self) -> frozenset:
        """Nodes without materialized sons."""
        return frozenset(x for x in self._nodes if not self._children[x])

    def maxel(self) -> frozenset:
        return self.terminal_nodes() - self._frontier

    def minel(self) -> frozenset:
        return frozenset(x for x in self._nodes if self._parent[x] is None)

    def least_node(self):
        roots = self.minel()
        if len(roots) == 1:
            return next(iter(roots))
        return None

    def is_chain(self, nodes: Iterable) -> bool:
        nodes = list(nodes)
        self._check(*nodes)
        return all(
            self.relate(a, b) is not Relation.INCOMPARABLE
            for i, a in enumerate(nodes) for b in nodes[i + 1:]
        )

    def is_antichain(self, nodes: Iterable) -> bool:
        nodes = list(set(nodes))
        self._check(*nodes)
        return all(
            self.relate(a, b) is Relation.INCOMPARABLE
            for i, a in enumerate(nodes) for b in nodes[i + 1:]
        )

    def branches_of(self) -> frozenset:
        """Maximal chains; in a finite tree these are the closed up-regions of terminal nodes."""
        return frozenset(
            frozenset((*self._ancestors[m], m)) for m in self.terminal_nodes()
        )

    def root_in_antichain(self, x, antichain: Iterable):
        """The unique r in the antichain with r <= x."""
        antichain = frozenset(antichain)
        self._check(x, *antichain)
        if not self.is_antichain(antichain):
            raise NotAntichainError(f"{sorted_nodes(antichain)} is not an antichain.")
        chain = set(self._ancestors[x]) | {x}
        hits = chain & antichain
        if not hits:
            raise NotBelowAntichainError(f"{x!r} lies below no member of the antichain.")
        return next(iter(hits))

    # ------------------------------------------------------------------
    # Derived trees
    # ------------------------------------------------------------------

    def restricted(self, keep: Iterable) -> "FinTree":
        """Induced subtree on a set closed under taking ancestors within the set."""
        keep = frozenset(keep)
        self._check(*keep)
        parent = {}
        for x in keep:
            up = [a for a in self._ancestors[x] if a in keep]
            parent[x] = up[-1] if up else None
        return FinTree(
            parent,
            {x: s for x, s in self._labels.items() if x in keep},
            [x for x in self._frontier if x in keep],
        )

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> dict:
        """JSON tree schema: {"nodes": [{"id", "label", "parent"}], "frontier": [...]}"""
        order = sorted_nodes(self._nodes)
        ids = {x: i for i, x in enumerate(order)}
        nodes = []
        for x in order:
            p = self._parent[x]
            label = self._labels.get(x)
            nodes.append({
                "id": ids[x],
                "label": list(label) if label is not None else None,
                "parent": ids[p] if p is not None else None,
            })
        out = {"nodes": nodes}
        if self._frontier:
            out["frontier"] = sorted(ids[x] for x in self._frontier)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "FinTree":
        try:
            rows = data["nodes"]
            parent = {int(r["id"]): (int(r["parent"]) if r.get("parent") is not None else None) for r in rows}
            labels = {int(r["id"]): tuple(r["label"]) for r in rows if r.get("label") is not None}
            frontier = [int(i) for i in data.get("frontier", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidTreeError(f"Malformed tree JSON: {exc}")
        return cls(parent, labels, frontier)

    @classmethod
    def from_seqs(cls, seqs: Iterable[Seq], frontier: Iterable[Seq] = ()) -> "FinTree":
        """Tree of Seq nodes ordered by ⊂; each node's parent is its longest proper prefix present."""
        seqs = frozenset(tuple(s) for s in seqs)
        parent = {}
        for s in seqs:
            p = None
            for k in range(len(s) - 1, -1, -1):
                if s[:k] in seqs:
                    p = s[:k]
                    break
            parent[s] = p
        return cls(parent, {s: s for s in seqs}, frontier)
