"""
Order-theoretic laws of finite trees, evaluated literally.

Each check returns a list of violation strings (empty = holds), so suites
can report the first failing instance as a witness.
"""

from __future__ import annotations

from itertools import combinations

from PiTree_Engine.trees.fintree import FinTree, Region, Relation


def brute_force_sons(tree: FinTree, x) -> frozenset:
    """{s : x < s and the open interval (x, s) is empty}, from pairwise order only."""
    return frozenset(
        s for s in tree.nodes
        if tree.less(x, s) and not any(tree.less(x, m) and tree.less(m, s) for m in tree.nodes)
    )


def all_chains(tree: FinTree) -> list[frozenset]:
    nodes = list(tree.nodes)
    out = []
    for k in range(len(nodes) + 1):
        for combo in combinations(nodes, k):
            if tree.is_chain(combo):
                out.append(frozenset(combo))
    return out


def maximal_chains_brute_force(tree: FinTree) -> frozenset:
    chains = all_chains(tree)
    return frozenset(c for c in chains if not any(c < d for d in chains))


def check_strict_order(tree: FinTree) -> list[str]:
    bad = []
    nodes = list(tree.nodes)
    for x in nodes:
        if tree.less(x, x):
            bad.append(f"irreflexivity fails at {x!r}")
        if not tree.is_chain(tree.region(x, Region.UP)):
            bad.append(f"ancestors of {x!r} are not a chain")
        for y in nodes:
            if tree.less(x, y):
                if tree.less(y, x):
                    bad.append(f"antisymmetry fails for {x!r}, {y!r}")
                for z in nodes:
                    if tree.less(y, z) and not tree.less(x, z):
                        bad.append(f"transitivity fails for {x!r} < {y!r} < {z!r}")
    return bad


def check_tree_laws(tree: FinTree) -> list[str]:
    """Every order law of a frontier-free finite tree."""
    bad = check_strict_order(tree)
    nodes = list(tree.nodes)
    maxel = tree.maxel()
    branches = tree.branches_of()

    # (a) maximal nodes are exactly the nodes without sons
    if maxel != frozenset(x for x in nodes if not brute_force_sons(tree, x)):
        bad.append("(a) maxel differs from {v : sons(v) = ∅}")
    for x in nodes:
        if tree.sons_of(x) != brute_force_sons(tree, x):
            bad.append(f"sons_of({x!r}) differs from the interval definition")

    # (b) x >= y and y ∥ z imply x ∥ z
    for x in nodes:
        for y in nodes:
            if tree.relate(x, y) not in (Relation.GREATER, Relation.EQUAL):
                continue
            for z in nodes:
                if tree.incomparable(y, z) and not tree.incomparable(x, z):
                    bad.append(f"(b) {x!r} >= {y!r} ∥ {z!r} but {x!r} not ∥ {z!r}")

    # (c) every chain lies in a branch
    for chain in all_chains(tree):
        if not any(chain <= b for b in branches):
            bad.append(f"(c) chain {sorted(map(repr, chain))} extends to no branch")

    for b in branches:
        # (d) outside nodes are incomparable with some member
        for x in nodes:
            if x not in b and not any(tree.incomparable(x, m) for m in b):
                bad.append(f"(d) {x!r} outside a branch is comparable with all its members")
        for m in b:
            # (e) the branch meets sons(m) when m is not maximal
            if m not in maxel and not (b & tree.sons_of(m)):
                bad.append(f"(e) branch misses sons of {m!r}")
            # (f) branches are closed downward toward the root
            if not tree.region(m, Region.UP_CLOSED) <= b:
                bad.append(f"(f) branch not closed under ancestors of {m!r}")

    # (g) + (h): branches are exactly the closed up-regions of maximal nodes
    brute = maximal_chains_brute_force(tree)
    closed_ups = frozenset(tree.region(m, Region.UP_CLOSED) for m in maxel)
    for m in maxel:
        if tree.region(m, Region.UP_CLOSED) not in brute:
            bad.append(f"(g) closed up-region of {m!r} is not a maximal chain")
    if branches != brute or branches != closed_ups:
        bad.append("(h) branches_of differs from the maximal chains")
    return bad
