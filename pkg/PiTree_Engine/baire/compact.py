"""
CompactCode — a finitely presented compact subset of the Baire space.

A code is a table ``allowed: Seq -> nonempty finite set`` for nodes of length
< table_depth, continued by the singleton tail {0} below that depth.  The
coded set is {p : p(n) ∈ allowed(p↾n) for all n}; the table must be pruned
(every reachable node has a nonempty entry), so every node of the code lies
on an infinite branch.

Usage:
    K = CompactCode.point((0, 0))          # {0^ω}
    K = CompactCode.uniform({0, 1}, 3)     # {0,1}^3 followed by zeros
"""

from __future__ import annotations

from typing import Iterable, Mapping

from PiTree_Engine.errors import InvalidCompactCodeError
from PiTree_Engine.trees.seq import Seq
from PiTree_Engine.utils.json_helpers import parse_seq_key, seq_key

TAIL: frozenset[int] = frozenset({0})


class CompactCode:
    __slots__ = ("_table", "_depth", "_hash")

    def __init__(self, table: Mapping[Seq, Iterable[int]], table_depth: int):
        if table_depth < 0:
            raise InvalidCompactCodeError(f"table_depth must be >= 0, got {table_depth}")
        cleaned: dict[Seq, frozenset[int]] = {}
        for key, values in table.items():
            key = tuple(key)
            vals = frozenset(int(v) for v in values)
            if len(key) >= table_depth:
                raise InvalidCompactCodeError(f"table entry {key} lies at or below table_depth {table_depth}")
            if any(v < 0 for v in vals):
                raise InvalidCompactCodeError(f"negative value in allowed set of {key}")
            cleaned[key] = vals

        # prunedness: walk every reachable node of the table
        reachable: dict[Seq, frozenset[int]] = {}
        frontier: list[Seq] = [()] if table_depth > 0 else []
        while frontier:
            node = frontier.pop()
            if node not in cleaned:
                raise InvalidCompactCodeError(f"reachable node {node} has no allowed set")
            allowed = cleaned[node]
            if not allowed:
                raise InvalidCompactCodeError(f"allowed set of {node} is empty (table not pruned)")
            reachable[node] = allowed
            if len(node) + 1 < table_depth:
                frontier.extend(node + (v,) for v in allowed)

        self._table = reachable
        self._depth = table_depth
        self._hash = hash((self._depth, frozenset(self._table.items())))

    # ------------------------------------------------------------------

    @property
    def table_depth(self) -> int:
        return self._depth

    @property
    def table(self) -> dict[Seq, frozenset[int]]:
        return dict(self._table)

    def __eq__(self, other) -> bool:
        return isinstance(other, CompactCode) and self._depth == other._depth and self._table == other._table

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CompactCode(depth={self._depth}, nodes={len(self._table)})"

    def allowed_at(self, node: Seq) -> frozenset[int]:
        """Allowed next values at a node of the code (assumes ``in_tree(node)``)."""
        if len(node) < self._depth:
            return self._table[tuple(node)]
        return TAIL

    def in_tree(self, node: Seq) -> bool:
        """node lies on the pruned tree of the code, i.e. S_node meets K."""
        for i, v in enumerate(node):
            if i < self._depth:
                if v not in self._table.get(tuple(node[:i]), ()):
                    return False
            elif v != 0:
                return False
        return True

    @property
    def max_branching(self) -> int:
        return max((len(v) for v in self._table.values()), default=1)

    def contains_point(self, prefix: Seq) -> bool:
        """Membership of the point prefix⌢0^ω."""
        padded = tuple(prefix) + (0,) * max(0, self._depth - len(prefix))
        return self.in_tree(padded)

    # ------------------------------------------------------------------
    # Constructors / serialization
    # ------------------------------------------------------------------

    @classmethod
    def point(cls, prefix: Seq) -> "CompactCode":
        """Singleton {prefix⌢0^ω}."""
        prefix = tuple(prefix)
        return cls({prefix[:i]: {prefix[i]} for i in range(len(prefix))}, len(prefix))

    @classmethod
    def uniform(cls, values: Iterable[int], table_depth: int) -> "CompactCode":
        """Every node below table_depth allows the same values."""
        values = sorted(set(values))
        table: dict[Seq, set[int]] = {}
        layer: list[Seq] = [()]
        for _ in range(table_depth):
            nxt = []
            for node in layer:
                table[node] = set(values)
                nxt.extend(node + (v,) for v in values)
            layer = nxt
        return cls(table, table_depth)

    def to_json(self) -> dict:
        return {
            "op": "compact",
            "depth": self._depth,
            "table": {seq_key(k): sorted(v) for k, v in sorted(self._table.items())},
        }

    @classmethod
    def from_json(cls, data: dict, location: str = "compact") -> "CompactCode":
        try:
            depth = int(data["depth"])
            raw = data["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidCompactCodeError(f"{location}: compact code needs 'depth' and 'table' ({exc})")
        if not isinstance(raw, dict):
            raise InvalidCompactCodeError(f"{location}: 'table' must be an object")
        table = {}
        for key, values in raw.items():
            if not isinstance(values, list):
                raise InvalidCompactCodeError(f"{location}.table[{key!r}]: allowed values must be a list")
            table[parse_seq_key(key, f"{location}.table")] = values
        return cls(table, depth)
