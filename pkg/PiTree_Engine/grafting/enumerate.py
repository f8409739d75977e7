"""
Graft, family and foliage-family enumerators used as test oracles.

Grafts are built around every host node as root: a host antichain strictly
above the root becomes the maximal nodes, and up to ``max_implant`` fresh
nodes named ``f"{tag}{j}"`` are threaded in between.  Fresh nodes that end
up terminal are marked as skeleton frontier (their sons are not
materialized), so they never count as maximal nodes.

Usage:
    from PiTree_Engine.grafting.enumerate import enumerate_families

    for grafts in enumerate_families(host, max_grafts=2):
        family = consistent_family(host, grafts)
"""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import Iterator

import numpy as np

from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.baire.setexpr import Cylinder
from PiTree_Engine.config import MAX_FAMILY_GRAFTS, MAX_IMPLANT_NODES
from PiTree_Engine.foliage.enumerate import all_subsets
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.grafting.anatomy import GraftAnatomy, check_family, graft_anatomy, pair_violations
from PiTree_Engine.grafting.foliage_hybrid import foliage_graft_check
from PiTree_Engine.trees.fintree import FinTree, Region, sorted_nodes

logger = logging.getLogger(__name__)

GRAFT_TAGS = "abcdefgh"


# ---------------------------------------------------------------------------
# Skeletons
# ---------------------------------------------------------------------------

def _antichains(host: FinTree, nodes: list, max_size: int) -> Iterator[tuple]:
    for k in range(max_size + 1):
        for combo in combinations(nodes, k):
            if host.is_antichain(combo):
                yield combo


def enumerate_grafts(
    host: FinTree,
    tag: str = "a",
    max_implant: int = MAX_IMPLANT_NODES,
    max_maxel: int = 2,
) -> Iterator[FinTree]:
    """Every graft skeleton for ``host`` within the implant and maxel bounds."""
    count = 0
    for root in sorted_nodes(host.nodes):
        above = sorted_nodes(host.region(root, Region.DOWN))
        for maxel in _antichains(host, above, max_maxel):
            for k in range(max_implant + 1):
                if k == 0 and not maxel:
                    continue
                fresh = [f"{tag}{j}" for j in range(k)]
                implant_choices = [[root, *fresh[:j]] for j in range(k)]
                maxel_choices = [[root, *fresh]] * len(maxel)
                for ps in product(*implant_choices):
                    for ms in product(*maxel_choices):
                        parent = {root: None}
                        parent.update(zip(fresh, ps))
                        parent.update(zip(maxel, ms))
                        used = set(ps) | set(ms)
                        frontier = [f for f in fresh if f not in used]
                        count += 1
                        yield FinTree(parent, frontier=frontier)
    logger.debug(f"enumerated {count} graft skeletons on a {len(host)}-node host")


def _anatomy_pool(host: FinTree, tag: str, max_implant: int) -> list[tuple[FinTree, GraftAnatomy]]:
    pool = []
    for G in enumerate_grafts(host, tag, max_implant):
        anatomy = graft_anatomy(host, G)
        if not anatomy.violations:
            pool.append((G, anatomy))
    return pool


def enumerate_families(
    host: FinTree,
    max_grafts: int = MAX_FAMILY_GRAFTS,
    max_implant: int = MAX_IMPLANT_NODES,
) -> Iterator[list[FinTree]]:
    """
    Consistent graft families of size 0..max_grafts; graft k uses tag GRAFT_TAGS[k].

    Skeletons that are not grafts on their own are dropped, so a combination
    is consistent iff each pair of anatomies passes the pair clauses.
    """
    yield []
    pools = [_anatomy_pool(host, GRAFT_TAGS[k], max_implant) for k in range(max_grafts)]
    for size in range(1, max_grafts + 1):
        for combo in product(*pools[:size]):
            # unordered families: keep the combination with increasing roots only once
            roots = [a.root for _, a in combo]
            if size > 1 and sorted_nodes(roots) != roots:
                continue
            if any(pair_violations(host, (k, d), (j, e))
                   for (k, (_, d)), (j, (_, e)) in combinations(enumerate(combo), 2)):
                continue
            yield [G for G, _ in combo]


def random_family(host: FinTree, rng: np.random.Generator, max_grafts: int = MAX_FAMILY_GRAFTS,
                  max_implant: int = MAX_IMPLANT_NODES, tries: int = 20) -> list[FinTree]:
    """A random consistent family; falls back to fewer grafts when draws keep clashing."""
    pools = [list(enumerate_grafts(host, GRAFT_TAGS[k], max_implant)) for k in range(max_grafts)]
    if not pools or not pools[0]:
        return []
    size = int(rng.integers(1, max_grafts + 1))
    for _ in range(tries):
        combo = [pool[int(rng.integers(len(pool)))] for pool in pools[:size]]
        if not check_family(host, combo):
            return combo
    return [pools[0][int(rng.integers(len(pools[0])))]]


# ---------------------------------------------------------------------------
# Tier 1: foliage families over a finite point universe
# ---------------------------------------------------------------------------

def enumerate_foliage_grafts(F: FoliageTree, skeleton: FinTree) -> Iterator[FoliageTree]:
    """Every leaf map on ``skeleton`` that makes it a foliage graft for F."""
    anatomy = graft_anatomy(F.skeleton, skeleton)
    free = sorted_nodes(anatomy.implant | {anatomy.root})
    fixed = {m: F.leaf(m) for m in anatomy.maxel}
    subsets = all_subsets(F.universe.full())
    for choice in product(subsets, repeat=len(free)):
        leaf = dict(fixed)
        leaf.update(zip(free, choice))
        G = FoliageTree(skeleton, leaf, F.universe)
        if foliage_graft_check(F, G).is_foliage_graft:
            yield G


def enumerate_foliage_families(
    F: FoliageTree,
    max_grafts: int = 1,
    max_implant: int = 1,
) -> Iterator[list[FoliageTree]]:
    """Foliage graft families over every consistent skeleton family of F."""
    for skeletons in enumerate_families(F.skeleton, max_grafts, max_implant):
        options = [list(enumerate_foliage_grafts(F, sk)) for sk in skeletons]
        yield from (list(combo) for combo in product(*options))


def random_foliage_graft(F: FoliageTree, skeleton: FinTree, rng: np.random.Generator) -> FoliageTree:
    """
    Random foliage graft on a skeleton: drawn top-down as random subsets of
    the parent leaf, each topped up with the leaves of the maximal nodes it
    must contain.
    """
    U = F.universe
    G = skeleton
    maxel = G.maxel()
    leaf = {m: F.leaf(m) for m in maxel}

    def required(x):
        return U.union_all(F.leaf(m) for m in maxel if G.less(x, m))

    for x in sorted(G.nodes - maxel, key=lambda n: len(G.ancestors(n))):
        p = G.parent_of(x)
        pool = sorted(F.leaf(x) if p is None else leaf[p], key=repr)
        keep = rng.random(len(pool)) < 0.7
        leaf[x] = U.union(frozenset(v for v, k in zip(pool, keep) if k), required(x))
    return FoliageTree(G, leaf, U)


def random_foliage_family(F: FoliageTree, rng: np.random.Generator,
                          max_grafts: int = MAX_FAMILY_GRAFTS, max_implant: int = 1) -> list[FoliageTree]:
    skeletons = random_family(F.skeleton, rng, max_grafts, max_implant)
    return [random_foliage_graft(F, sk, rng) for sk in skeletons]


# ---------------------------------------------------------------------------
# Tier 2: cylinder-built foliage families on the truncated standard tree
# ---------------------------------------------------------------------------

def _random_antichain(host: FinTree, nodes: list, rng: np.random.Generator, max_size: int) -> list:
    out: list = []
    for k in rng.permutation(len(nodes)).tolist():
        x = nodes[k]
        if all(host.incomparable(x, y) for y in out):
            out.append(x)
        if len(out) >= max_size:
            break
    return sorted_nodes(out)


def _baire_graft(F: FoliageTree, root, tag: str, rng: np.random.Generator) -> FoliageTree:
    """Root v, one implant node, maximal nodes on cylinders strictly below S_v."""
    host, U = F.skeleton, F.universe
    above = sorted_nodes(host.region(root, Region.DOWN))
    maxel = _random_antichain(host, above, rng, max_size=3)
    implant = f"{tag}0"
    on_implant = [m for m in maxel if rng.random() < 0.6] or maxel[:1]
    parent = {root: None, implant: root}
    parent.update({m: (implant if m in on_implant else root) for m in maxel})
    leaf = {m: Cylinder(m) for m in maxel}
    leaf[implant] = U.union_all(Cylinder(m) for m in on_implant)
    leaf[root] = U.union_all(Cylinder(m) for m in maxel)
    return FoliageTree(FinTree(parent), leaf, U)


def random_baire_foliage_family(
    rng: np.random.Generator,
    depth: int = 3,
    width: int = 3,
    max_grafts: int = MAX_FAMILY_GRAFTS,
) -> tuple[FoliageTree, list[FoliageTree]]:
    """Truncated standard tree plus a random family of cylinder-built foliage grafts."""
    F = std_tree(StdTreeView(depth, width))
    host = F.skeleton
    candidates = sorted_nodes(x for x in host.nodes if host.region(x, Region.DOWN))
    size = int(rng.integers(1, max_grafts + 1))
    roots: list = []
    for k in rng.permutation(len(candidates)).tolist():
        x = candidates[k]
        if all(host.incomparable(x, r) for r in roots):
            roots.append(x)
        if len(roots) >= size:
            break
    grafts = [_baire_graft(F, r, GRAFT_TAGS[k], rng) for k, r in enumerate(sorted_nodes(roots))]
    return F, grafts
