"""
Grafts and consistent graft families over explicit finite hosts.

A graft G for a host T is a tree with a least node 0_G ∈ T whose maximal
nodes form a T-antichain strictly above 0_G and whose remaining nodes (the
implant) are fresh.  The explant is what G replaces: the T-descendants of
0_G outside the downward footline of maxel G.

Anatomy and family checks report violations as data; ``consistent_family``
raises on the first one.

Usage:
    anatomy = graft_anatomy(host, G)
    family = consistent_family(host, [G1, G2])
    family.support

Public API:
    GraftAnatomy, ConsistentFamily, graft_anatomy, check_family,
    consistent_family, pair_violations, family_to_json, family_from_json
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from PiTree_Engine.errors import InconsistentFamilyError, SchemaViolationError
from PiTree_Engine.trees.fintree import FinTree, Region, sorted_nodes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraftAnatomy:
    host: FinTree
    graft: FinTree
    root: object
    maxel: frozenset
    implant: frozenset
    explant: frozenset
    violations: tuple[str, ...]

    @property
    def is_graft(self) -> bool:
        return not self.violations

    @property
    def nodes(self) -> frozenset:
        return self.graft.nodes

    @property
    def bounded_chains(self) -> bool:
        """Finite graft with nothing truncated."""
        return not self.graft.frontier


def graft_anatomy(host: FinTree, G: FinTree) -> GraftAnatomy:
    """Check clauses (a)–(f) of a graft and compute implant and explant."""
    bad: list[str] = []
    root = G.least_node()
    maxel = G.maxel()

    if len(G) <= 1:
        bad.append("(a) a graft needs more than one node")
    if root is None:
        bad.append("(b) graft has no least node")
    if root is not None and root not in host:
        bad.append(f"(c) root {root!r} is not a host node")
    stray = [m for m in sorted_nodes(maxel) if m not in host]
    if stray:
        bad.append(f"(c) maximal nodes {stray!r} are not host nodes")
    if root is not None and root in host:
        above = host.region(root, Region.DOWN)
        loose = [m for m in sorted_nodes(maxel) if m in host and m not in above]
        if loose:
            bad.append(f"(d) maximal nodes {loose!r} do not lie strictly above the root in the host")
    if not stray and not host.is_antichain(maxel):
        bad.append("(e) maximal nodes are not a host antichain")

    implant = G.nodes - maxel - ({root} if root is not None else set())
    clash = [i for i in sorted_nodes(implant) if i in host]
    if clash:
        bad.append(f"(f) implant nodes {clash!r} already belong to the host")

    if root is not None and root in host:
        explant = host.region(root, Region.DOWN) - host.footline(maxel & host.nodes, "down")
    else:
        explant = frozenset()

    if bad:
        logger.debug(f"graft anatomy violations: {bad}")
    return GraftAnatomy(host, G, root, maxel, frozenset(implant), explant, tuple(bad))


@dataclass(frozen=True)
class ConsistentFamily:
    host: FinTree
    grafts: tuple[GraftAnatomy, ...]
    support: frozenset

    def graft(self, gid: int) -> GraftAnatomy:
        return self.grafts[gid]

    @property
    def roots(self) -> frozenset:
        return frozenset(a.root for a in self.grafts)

    def graft_rooted_at(self, node) -> int | None:
        for gid, a in enumerate(self.grafts):
            if a.root == node:
                return gid
        return None


def _root_clause(host: FinTree, d: GraftAnatomy, e: GraftAnatomy) -> bool:
    return (
        host.incomparable(d.root, e.root)
        or d.root in host.footline(e.maxel, "down")
        or e.root in host.footline(d.maxel, "down")
    )


def check_family(host: FinTree, grafts: Sequence[FinTree]) -> list[tuple[tuple, str, str]]:
    """Violations of family consistency as (pair, clause, message)."""
    anatomies = [graft_anatomy(host, G) for G in grafts]
    out: list[tuple[tuple, str, str]] = []
    for k, a in enumerate(anatomies):
        for v in a.violations:
            out.append(((k, k), "a", f"graft {k} is not a graft: {v}"))
    if out:
        return out
    for (k, d), (j, e) in combinations(enumerate(anatomies), 2):
        out.extend(pair_violations(host, (k, d), (j, e)))
    return out


def pair_violations(host: FinTree, first: tuple[int, GraftAnatomy], second: tuple[int, GraftAnatomy]):
    """Clauses (b) and (c) for two anatomies that are grafts on their own."""
    (k, d), (j, e) = first, second
    out: list[tuple[tuple, str, str]] = []
    shared = d.implant & e.implant
    if shared:
        out.append(((k, j), "b", f"grafts {k} and {j} share implant nodes {sorted_nodes(shared)!r}"))
    if not _root_clause(host, d, e):
        out.append(((k, j), "c", f"roots {d.root!r} and {e.root!r} of grafts {k}, {j} are badly placed"))
    return out


def consistent_family(host: FinTree, grafts: Sequence[FinTree]) -> ConsistentFamily:
    """
    Raises:
        InconsistentFamilyError: with the first violating pair and clause.
    """
    problems = check_family(host, grafts)
    if problems:
        pair, clause, message = problems[0]
        raise InconsistentFamilyError(message, pair=pair, clause=clause)
    anatomies = tuple(graft_anatomy(host, G) for G in grafts)
    removed = frozenset().union(*(a.explant for a in anatomies)) if anatomies else frozenset()
    logger.debug(f"consistent family of {len(anatomies)} grafts, {len(removed)} explant nodes")
    return ConsistentFamily(host, anatomies, host.nodes - removed)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def encode_node(x):
    return list(x) if isinstance(x, tuple) else x


def decode_node(x):
    return tuple(decode_node(v) for v in x) if isinstance(x, list) else x


def skeleton_to_json(tree: FinTree) -> dict:
    order = sorted_nodes(tree.nodes)
    return {
        "parent": [[encode_node(x), encode_node(tree.parent_of(x))] for x in order],
        "frontier": [encode_node(x) for x in sorted_nodes(tree.frontier)],
    }


def skeleton_from_json(data, location: str) -> FinTree:
    if not isinstance(data, dict) or not isinstance(data.get("parent"), list):
        raise SchemaViolationError("tree needs a 'parent' list of [node, parent] pairs", location)
    try:
        parent = {decode_node(x): decode_node(p) for x, p in data["parent"]}
    except (TypeError, ValueError):
        raise SchemaViolationError("bad [node, parent] pair", location)
    frontier = [decode_node(x) for x in data.get("frontier", [])]
    return FinTree(parent, frontier=frontier)


def family_to_json(host: FinTree, grafts: Sequence[FinTree]) -> dict:
    """Host plus grafts; each graft lists its root and maxel for readability."""
    out = {"host": skeleton_to_json(host), "grafts": []}
    for G in grafts:
        row = skeleton_to_json(G)
        row["root"] = encode_node(G.least_node())
        row["maxel"] = [encode_node(m) for m in sorted_nodes(G.maxel())]
        out["grafts"].append(row)
    return out


def family_from_json(data: dict, location: str = "family") -> tuple[FinTree, list[FinTree]]:
    host = skeleton_from_json(data.get("host"), f"{location}.host")
    grafts = [skeleton_from_json(g, f"{location}.grafts[{k}]") for k, g in enumerate(data.get("grafts", []))]
    return host, grafts
