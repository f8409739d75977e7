"""
Test Runner — order-theoretic laws over every labeled forest on <= 5 nodes.

Usage:
    python -m PiTree_Engine.trees.test_tree_laws
"""

import os
import sys

import pytest
from hypothesis import given, settings, strategies as st

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.trees.enumerate import enumerate_small_trees
from PiTree_Engine.trees.fintree import FinTree
from PiTree_Engine.trees.laws import check_strict_order, check_tree_laws


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tree_laws_exhaustive(n):
    for tree in enumerate_small_trees(n):
        assert check_tree_laws(tree) == [], tree.parent_map


@st.composite
def random_forests(draw, max_nodes=9):
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    parent = {}
    for k in range(n):
        # parents only among earlier nodes keeps the map acyclic
        parent[k] = draw(st.one_of(st.none(), st.integers(0, k - 1))) if k else None
    return FinTree(parent)


@settings(max_examples=60, deadline=None)
@given(random_forests())
def test_strict_order_on_random_forests(tree):
    assert check_strict_order(tree) == []


@settings(max_examples=25, deadline=None)
@given(random_forests(max_nodes=7))
def test_tree_laws_on_random_forests(tree):
    assert check_tree_laws(tree) == []


def main():
    print("=" * 60)
    print("  Tree laws — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
