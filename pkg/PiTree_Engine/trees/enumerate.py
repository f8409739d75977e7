"""
Small-instance enumerators used as test oracles.

enumerate_small_trees(n) yields every labeled forest on {0..n-1} exactly
once, in a deterministic order; the count is (n+1)^(n-1).

Usage:
    from PiTree_Engine.trees.enumerate import enumerate_small_trees

    for tree in enumerate_small_trees(3):
        ...
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Iterator

import numpy as np

from PiTree_Engine.config import MAX_ENUM_NODES
from PiTree_Engine.errors import BoundExceededError, InvalidTreeError
from PiTree_Engine.trees.fintree import FinTree

logger = logging.getLogger(__name__)


def _is_acyclic(parents: tuple) -> bool:
    n = len(parents)
    state = [0] * n  # 0 unseen, 1 on path, 2 done
    for start in range(n):
        path = []
        cur = start
        while cur is not None and state[cur] == 0:
            state[cur] = 1
            path.append(cur)
            cur = parents[cur]
        if cur is not None and state[cur] == 1:
            return False
        for x in path:
            state[x] = 2
    return True


def enumerate_small_trees(n: int, bound: int | None = None) -> Iterator[FinTree]:
    """
    Every parent map on {0..n-1} without cycles, as a FinTree.

    Raises:
        BoundExceededError: n above the configured bound.
    """
    bound = MAX_ENUM_NODES if bound is None else bound
    if n < 0 or n > bound:
        raise BoundExceededError(f"n={n} outside 0..{bound}.")
    choices = [[None] + [p for p in range(n) if p != x] for x in range(n)]
    count = 0
    for parents in product(*choices):
        if _is_acyclic(parents):
            count += 1
            yield FinTree({x: parents[x] for x in range(n)})
    logger.debug(f"enumerated {count} labeled forests on {n} nodes")


def count_forests_brute_force(n: int) -> int:
    """Independent count: all n^n-style parent choices, rejecting cycles by reachability."""
    total = 0
    for parents in product(*[[None] + list(range(n))] * n):
        if any(parents[x] == x for x in range(n)):
            continue
        try:
            FinTree({x: parents[x] for x in range(n)})
        except InvalidTreeError:
            continue
        total += 1
    return total


def random_tree(n: int, rng: np.random.Generator, rooted: bool = True) -> FinTree:
    """Random labeled tree: node k picks a parent among 0..k-1 (node 0 is the root)."""
    parent: dict[int, int | None] = {0: None} if n else {}
    for k in range(1, n):
        if not rooted and rng.random() < 0.2:
            parent[k] = None
        else:
            parent[k] = int(rng.integers(0, k))
    perm = rng.permutation(n).tolist()
    return FinTree({perm[x]: (perm[p] if p is not None else None) for x, p in parent.items()})


def _shape_key(parent: dict, node) -> tuple:
    sons = [k for k, p in parent.items() if p == node]
    return tuple(sorted(_shape_key(parent, s) for s in sons))


def enumerate_tree_shapes(n: int, bound: int | None = None, distinct: bool = False) -> Iterator[FinTree]:
    """
    Rooted trees on {0..n-1} whose parents precede their sons.

    Every rooted tree shape occurs at least once, with (n-1)! instances in
    total, which keeps pairwise graft enumeration tractable.  With
    ``distinct=True`` only the first instance of each shape is yielded.
    """
    bound = MAX_ENUM_NODES if bound is None else bound
    if n < 1 or n > bound:
        raise BoundExceededError(f"n={n} outside 1..{bound}.")
    seen: set[tuple] = set()
    for parents in product(*[range(k) for k in range(1, n)]):
        parent: dict[int, int | None] = {0: None}
        parent.update({k + 1: p for k, p in enumerate(parents)})
        if distinct:
            key = _shape_key(parent, 0)
            if key in seen:
                continue
            seen.add(key)
        yield FinTree(parent)
