"""
Test Runner — foliage vocabulary, flags and fruit laws on finite universes.

Usage:
    python -m PiTree_Engine.foliage.test_foliage
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.errors import EmptyNodeSetError
from PiTree_Engine.foliage.enumerate import all_subsets, enumerate_foliage_trees, random_foliage_tree
from PiTree_Engine.foliage.foliage_tree import (
    FoliageTree,
    flesh_of,
    fruit_of,
    pi_refines,
    scope_of,
    shoot_family,
    shoot_of,
    yield_of,
)
from PiTree_Engine.foliage.laws import check_fruit_laws, check_refinement_transitive
from PiTree_Engine.foliage.predicates import foliage_flags, grows_into
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.trees.enumerate import enumerate_small_trees, random_tree
from PiTree_Engine.trees.fintree import FinTree

U4 = FiniteUniverse(range(4))


def _binary_partition_tree():
    """Root {0,1,2,3} split into {0,1} and {2,3}, then singletons."""
    sk = FinTree({"r": None, "a": "r", "b": "r", "a0": "a", "a1": "a", "b2": "b", "b3": "b"})
    leaf = {
        "r": frozenset(range(4)), "a": frozenset({0, 1}), "b": frozenset({2, 3}),
        "a0": frozenset({0}), "a1": frozenset({1}), "b2": frozenset({2}), "b3": frozenset({3}),
    }
    return FoliageTree(sk, leaf, U4)


def test_fruit_flesh_yield():
    F = _binary_partition_tree()
    assert fruit_of(F, ["a"]) == {0, 1}
    assert fruit_of(F, ["r", "a", "a1"]) == {1}
    assert flesh_of(F, ["a0", "b3"]) == {0, 3}
    assert yield_of(F) == flesh_of(F)
    with pytest.raises(EmptyNodeSetError):
        fruit_of(F, [])


def test_scope():
    F = _binary_partition_tree()
    assert scope_of(F, 2) == {"r", "b", "b2"}
    outside = FoliageTree(F.skeleton, {x: frozenset() for x in F.nodes}, U4)
    assert scope_of(outside, 2) == frozenset()


def test_shoots():
    F = _binary_partition_tree()
    assert shoot_family(F, "a0") == [frozenset()]
    family = shoot_family(F, "r")
    assert sorted(map(sorted, family)) == sorted(map(sorted, [set(), {0, 1}, {2, 3}, {0, 1, 2, 3}]))
    shoot = shoot_of(F, "r", width=5)
    assert shoot.flesh == frozenset(range(4)) and shoot.sons == ("a", "b")


def test_pi_refines():
    assert pi_refines([frozenset({1})], [frozenset()], U4)
    delta = [frozenset({0, 1}), frozenset({2})]
    assert pi_refines(delta, delta, U4)
    assert pi_refines([frozenset({0})], [frozenset({0, 1})], U4)
    assert not pi_refines([frozenset({0, 1})], [frozenset({0})], U4)


def test_flags_on_partition_tree():
    flags = foliage_flags(_binary_partition_tree())
    assert flags.nonincreasing and flags.splittable and flags.locally_strict
    assert flags.complete and flags.strict_branches and flags.nonempty_leaves


def test_flags_on_full_chain():
    sk = FinTree({0: None, 1: 0, 2: 1})
    F = FoliageTree(sk, {x: U4.full() for x in sk.nodes}, U4)
    flags = foliage_flags(F)
    assert flags.nonincreasing and flags.splittable
    # each son covers its parent on a chain
    assert flags.locally_strict


def test_splittable_witness():
    sk = FinTree({0: None, 1: 0, 2: 0})
    F = FoliageTree(sk, {0: frozenset({0, 1}), 1: frozenset({0}), 2: frozenset({0, 1})}, U4)
    assert foliage_flags(F).splittable is False


def test_grows_into_finite():
    F = _binary_partition_tree()
    # the singleton leaves sit on maximal nodes, so no shoot fits inside {p}
    assert grows_into(F, U4.full(), depth=3, width=4) is False
    assert grows_into(F, frozenset(), depth=3, width=4) is True
    empty = FoliageTree(F.skeleton, {x: frozenset() for x in F.nodes}, U4)
    assert grows_into(empty, U4.full(), depth=3, width=4) is False


def test_yield_equals_flesh_when_locally_strict():
    for tree in enumerate_small_trees(3):
        if tree.least_node() is None:
            continue
        for F in enumerate_foliage_trees(tree, (0, 1)):
            flags = foliage_flags(F)
            if flags.locally_strict:
                assert yield_of(F) == flesh_of(F)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fruit_laws_exhaustive(n):
    for tree in enumerate_small_trees(n):
        for F in enumerate_foliage_trees(tree, (0, 1)):
            assert check_fruit_laws(F) == [], (tree.parent_map, F.leaf_map)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_fruit_laws_random(seed, n):
    rng = np.random.default_rng(seed)
    tree = random_tree(n, rng)
    F = random_foliage_tree(tree, range(4), rng, nonincreasing=bool(seed % 2))
    assert check_fruit_laws(F) == []


_SETS = st.frozensets(st.integers(0, 3))


@settings(max_examples=200, deadline=None)
@given(st.lists(_SETS, max_size=4), st.lists(_SETS, max_size=4), st.lists(_SETS, max_size=4))
def test_refinement_is_transitive(gamma, delta, epsilon):
    assert check_refinement_transitive(gamma, delta, epsilon, U4) == []


def test_all_subsets_count():
    assert len(all_subsets(range(3))) == 8


def main():
    print("=" * 60)
    print("  Foliage core — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
