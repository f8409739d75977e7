"""
Tier-1 foliage instances: every leaf map over a small point universe.

Usage:
    from PiTree_Engine.foliage.enumerate import enumerate_foliage_trees

    for F in enumerate_foliage_trees(tree, points=(0, 1)):
        ...
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

import numpy as np

from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.trees.fintree import FinTree, sorted_nodes


def all_subsets(points) -> list[frozenset]:
    points = sorted(points, key=repr)
    return [frozenset(c) for k in range(len(points) + 1) for c in combinations(points, k)]


def enumerate_foliage_trees(tree: FinTree, points, nonincreasing: bool = False) -> Iterator[FoliageTree]:
    """Every leaf map tree.nodes -> subsets of points (optionally only nonincreasing ones)."""
    universe = FiniteUniverse(points)
    order = sorted_nodes(tree.nodes)
    subsets = all_subsets(points)
    for choice in product(subsets, repeat=len(order)):
        leaf = dict(zip(order, choice))
        if nonincreasing and any(
            not leaf[y] <= leaf[a] for y in order for a in tree.ancestors(y)
        ):
            continue
        yield FoliageTree(tree, leaf, universe)


def random_foliage_tree(tree: FinTree, points, rng: np.random.Generator, nonincreasing: bool = True) -> FoliageTree:
    """Random leaves; nonincreasing ones are drawn top-down as random subsets of the parent leaf."""
    universe = FiniteUniverse(points)
    leaf = {}
    for x in sorted(tree.nodes, key=lambda n: len(tree.ancestors(n))):
        p = tree.parent_of(x)
        pool = sorted(leaf[p] if (nonincreasing and p is not None) else universe.full(), key=repr)
        keep = rng.random(len(pool)) < 0.7
        leaf[x] = frozenset(v for v, k in zip(pool, keep) if k)
    return FoliageTree(tree, leaf, universe)
