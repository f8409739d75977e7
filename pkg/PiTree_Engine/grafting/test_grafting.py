"""
Test Runner — grafts, consistent families, hybrids and foliage hybrids.

Usage:
    python -m PiTree_Engine.grafting.test_grafting
"""

import os
import sys
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.config import BAIRE_FAMILY_SAMPLES
from PiTree_Engine.errors import (
    HostNotNonincreasingError,
    InconsistentFamilyError,
    InconsistentFoliageFamilyError,
    InvalidHybridNodeError,
    NotABranchError,
)
from PiTree_Engine.foliage.enumerate import all_subsets, enumerate_foliage_trees, random_foliage_tree
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.grafting.anatomy import (
    check_family,
    consistent_family,
    family_from_json,
    family_to_json,
    graft_anatomy,
)
from PiTree_Engine.grafting.enumerate import (
    GRAFT_TAGS,
    enumerate_families,
    enumerate_foliage_families,
    enumerate_grafts,
    random_baire_foliage_family,
    random_foliage_family,
)
from PiTree_Engine.grafting.foliage_hybrid import foliage_family, foliage_graft_check, foliage_hybrid_build
from PiTree_Engine.grafting.hybrid import Graft, Supp, branch_trace, hybrid_build, hybrid_relate
from PiTree_Engine.grafting.laws import (
    check_branch_trace,
    check_foliage_hybrid_laws,
    check_graft_laws,
    check_hybrid_order,
    check_hybrid_sons,
    check_hybrid_tree,
    check_loss_laws,
)
from PiTree_Engine.grafting.oracle import matches_closure
from PiTree_Engine.trees.enumerate import enumerate_tree_shapes, random_tree
from PiTree_Engine.trees.fintree import FinTree, Relation, sorted_nodes
from PiTree_Engine.trees.shape import standard_fintree

BIN3 = standard_fintree(3, 2)
U4 = FiniteUniverse(range(4))


def _split_graft():
    """⟨0⟩ -> i -> {⟨0,0⟩, ⟨0,1⟩} on the depth-3 binary tree."""
    return FinTree({(0,): None, "i": (0,), (0, 0): "i", (0, 1): "i"})


def _binary_foliage():
    leaf = {
        (): frozenset(range(4)), (0,): frozenset({0, 1}), (1,): frozenset({2, 3}),
        (0, 0): frozenset({0}), (0, 1): frozenset({1}), (1, 0): frozenset({2}), (1, 1): frozenset({3}),
    }
    return FoliageTree(BIN3, leaf, U4)


def _one_point_graft(root, implant, keep, leaf_value):
    """root -> implant -> keep, every leaf equal to leaf_value."""
    sk = FinTree({root: None, implant: root, keep: implant})
    return FoliageTree(sk, {root: leaf_value, implant: leaf_value, keep: leaf_value}, U4)


def _all_laws(family, H):
    return (check_graft_laws(family) + check_hybrid_tree(family, H) + check_hybrid_order(family, H)
            + check_hybrid_sons(family, H) + check_branch_trace(family, H))


# ---------------------------------------------------------------------------
# Anatomy and families
# ---------------------------------------------------------------------------

def test_empty_maxel_graft():
    G = FinTree({(0,): None, "i": (0,)}, frontier=["i"])
    a = graft_anatomy(BIN3, G)
    assert a.is_graft, a.violations
    assert a.maxel == frozenset()
    assert a.implant == {"i"}
    assert a.explant == {(0, 0), (0, 1)}
    assert not a.bounded_chains


def test_explant_of_two_maximal_nodes():
    host = standard_fintree(4, 4)
    G = FinTree({(0,): None, (0, 1): (0,), "p": (0,), (0, 2, 3): "p"})
    a = graft_anatomy(host, G)
    assert a.is_graft, a.violations
    assert a.implant == {"p"}
    kept = {(0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 1, 3), (0, 2, 3)}
    descendants = {s for s in host.nodes if len(s) > 1 and s[0] == 0}
    assert a.explant == descendants - kept
    assert len(a.explant) == 14


def test_maximal_node_off_the_root_is_reported():
    G = FinTree({(0,): None, (1,): (0,)})
    a = graft_anatomy(BIN3, G)
    assert not a.is_graft
    assert any(v.startswith("(d)") for v in a.violations)


def test_fresh_terminal_nodes_must_be_frontier():
    G = FinTree({(0,): None, "i": (0,)})
    assert any(v.startswith("(c)") for v in graft_anatomy(BIN3, G).violations)


def test_empty_family_keeps_the_host():
    family = consistent_family(BIN3, [])
    assert family.support == BIN3.nodes
    H = hybrid_build(family)
    assert {h.node for h in H.nodes} == BIN3.nodes
    for x in BIN3.nodes:
        for y in BIN3.nodes:
            assert H.less(Supp(x), Supp(y)) == BIN3.less(x, y)


def test_equal_roots_are_inconsistent():
    G1 = FinTree({(0,): None, "a0": (0,), (0, 0): "a0"})
    G2 = FinTree({(0,): None, "b0": (0,), (0, 1): "b0"})
    with pytest.raises(InconsistentFamilyError) as info:
        consistent_family(BIN3, [G1, G2])
    assert info.value.clause == "c"
    assert info.value.pair == (0, 1)


def test_shared_implant_nodes_are_inconsistent():
    G1 = FinTree({(0,): None, "x": (0,), (0, 0): "x"})
    G2 = FinTree({(1,): None, "x": (1,), (1, 1): "x"})
    assert [clause for _, clause, _ in check_family(BIN3, [G1, G2])] == ["b"]


def test_root_inside_the_other_grafts_footline():
    D = FinTree({(): None, "a0": (), (0,): "a0", (1,): "a0"})
    E = FinTree({(0,): None, "b0": (0,), (0, 0): "b0", (0, 1): "b0"})
    family = consistent_family(BIN3, [D, E])
    assert family.support == BIN3.nodes
    H = hybrid_build(family)
    assert _all_laws(family, H) == []
    assert H.sons_of(Supp(())) == {Graft(0, "a0")}
    assert H.sons_of(Supp((0,))) == {Graft(1, "b0")}
    assert H.less(Graft(0, "a0"), Graft(1, "b0"))


# ---------------------------------------------------------------------------
# Hybrid order and hybrid trees
# ---------------------------------------------------------------------------

def test_hybrid_relate_cases():
    family = consistent_family(BIN3, [_split_graft()])
    i = Graft(0, "i")
    assert hybrid_relate(family, Supp(()), Supp((0, 0))) is Relation.LESS
    assert hybrid_relate(family, Supp((0,)), i) is Relation.LESS
    assert hybrid_relate(family, Supp(()), i) is Relation.LESS
    assert hybrid_relate(family, i, Supp((0, 1))) is Relation.LESS
    assert hybrid_relate(family, Supp((0, 1)), i) is Relation.GREATER
    assert hybrid_relate(family, i, Supp((1, 0))) is Relation.INCOMPARABLE
    with pytest.raises(InvalidHybridNodeError):
        hybrid_relate(family, Graft(0, "nope"), i)
    with pytest.raises(InvalidHybridNodeError):
        hybrid_relate(family, Supp((5,)), i)


def test_hybrid_sons_example():
    family = consistent_family(BIN3, [_split_graft()])
    H = hybrid_build(family)
    assert H.sons_of(Supp((0,))) == {Graft(0, "i")}
    assert H.sons_of(Graft(0, "i")) == {Supp((0, 0)), Supp((0, 1))}
    assert H.sons_of(Supp(())) == {Supp((0,)), Supp((1,))}
    assert matches_closure(family, H)
    assert _all_laws(family, H) == []


def test_fresh_chain_replaces_a_subtree():
    G = FinTree({(0,): None, "c0": (0,), "c1": "c0"}, frontier=["c1"])
    family = consistent_family(BIN3, [G])
    assert family.support == BIN3.nodes - {(0, 0), (0, 1)}
    H = hybrid_build(family)
    assert H.sons_of(Supp((0,))) == {Graft(0, "c0")}
    assert H.frontier == {Graft(0, "c1")}
    assert matches_closure(family, H)


def test_branch_trace_examples():
    family = consistent_family(BIN3, [_split_graft()])
    H = hybrid_build(family)
    B = {Supp(()), Supp((0,)), Graft(0, "i"), Supp((0, 0))}
    trace = branch_trace(family, B, H)
    assert trace.per_graft == {0: frozenset({(0,), "i", (0, 0)})}
    assert trace.support_part == {Supp(()), Supp((0,)), Supp((0, 0))}

    avoiding = {Supp(()), Supp((1,)), Supp((1, 0))}
    assert branch_trace(family, avoiding, H).per_graft == {}

    with pytest.raises(NotABranchError):
        branch_trace(family, {Supp(()), Supp((0,))}, H)


def test_branch_trace_without_grafts():
    family = consistent_family(BIN3, [])
    B = {Supp(()), Supp((1,)), Supp((1, 1))}
    trace = branch_trace(family, B)
    assert trace.per_graft == {}
    assert trace.support_part == B


def test_family_json_round_trip():
    host, grafts = family_from_json(family_to_json(BIN3, [_split_graft()]))
    assert host.parent_map == BIN3.parent_map
    assert grafts[0].parent_map == _split_graft().parent_map


@pytest.mark.parametrize("n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
def test_single_graft_laws_exhaustive(n):
    for host in enumerate_tree_shapes(n, distinct=True):
        for grafts in enumerate_families(host, max_grafts=1):
            family = consistent_family(host, grafts)
            H = hybrid_build(family)
            assert _all_laws(family, H) == [], (host.parent_map, [G.parent_map for G in grafts])


@pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
def test_graft_pair_laws_exhaustive(n):
    seen = 0
    for host in enumerate_tree_shapes(n, distinct=True):
        for grafts in enumerate_families(host, max_grafts=2):
            if len(grafts) < 2:
                continue
            seen += 1
            family = consistent_family(host, grafts)
            H = hybrid_build(family)
            assert _all_laws(family, H) == [], (host.parent_map, [G.parent_map for G in grafts])
    assert seen > 0


@pytest.mark.parametrize("n", [2, 3])
def test_cached_pairs_match_full_family_check(n):
    for host in enumerate_tree_shapes(n, distinct=True):
        pools = [list(enumerate_grafts(host, GRAFT_TAGS[k])) for k in range(2)]
        expected = set()
        for G, K in product(*pools):
            roots = [G.least_node(), K.least_node()]
            if check_family(host, [G, K]) or sorted_nodes(roots) != roots:
                continue
            expected.add((G, K))
        found = {tuple(grafts) for grafts in enumerate_families(host, max_grafts=2) if len(grafts) == 2}
        assert found == expected, host.parent_map


# ---------------------------------------------------------------------------
# Foliage grafts and foliage hybrids
# ---------------------------------------------------------------------------

def test_foliage_graft_cuts():
    F = _binary_foliage()
    whole = FoliageTree(_split_graft(), {
        (0,): frozenset({0, 1}), "i": frozenset({0, 1}), (0, 0): frozenset({0}), (0, 1): frozenset({1}),
    }, U4)
    check = foliage_graft_check(F, whole)
    assert check.is_foliage_graft and check.cut == frozenset()

    narrow = _one_point_graft((0,), "a0", (0, 0), frozenset({0}))
    check = foliage_graft_check(F, narrow)
    assert check.is_foliage_graft, check.violations
    assert check.cut == {1}


def test_foliage_graft_maximal_leaf_disagreement():
    F = _binary_foliage()
    G = _one_point_graft((0,), "a0", (0, 0), frozenset({0, 1}))
    check = foliage_graft_check(F, G)
    assert not check.is_foliage_graft
    assert any(v.startswith("(d)") for v in check.violations)


def test_foliage_graft_needs_nonincreasing_host():
    F = _binary_foliage().with_leaves({x: frozenset({len(x)}) for x in BIN3.nodes})
    with pytest.raises(HostNotNonincreasingError):
        foliage_graft_check(F, _one_point_graft((0,), "a0", (0, 0), frozenset()))


def test_empty_foliage_family():
    F = _binary_foliage()
    fam = foliage_family(F, [])
    assert fam.loss == frozenset()
    H = foliage_hybrid_build(F, fam)
    assert {h.node: H.leaf(h) for h in H.nodes} == F.leaf_map


def test_loss_is_the_union_of_cuts():
    F = _binary_foliage()
    G1 = _one_point_graft((0,), "a0", (0, 0), frozenset({0}))
    G2 = _one_point_graft((1,), "b0", (1, 1), frozenset({3}))
    fam = foliage_family(F, [G1, G2])
    assert fam.cuts == (frozenset({1}), frozenset({2}))
    assert fam.loss == {1, 2}
    H = foliage_hybrid_build(F, fam)
    assert H.leaf(Supp(())) == {0, 3}
    assert H.leaf(Graft(0, "a0")) == {0}
    assert check_loss_laws(fam, H, [frozenset({0}), frozenset({0, 3})]) == []
    assert check_foliage_hybrid_laws(fam, H) == []


def test_single_cut_point_leaves_every_leaf():
    F = _binary_foliage()
    fam = foliage_family(F, [_one_point_graft((0,), "a0", (0, 0), frozenset({0}))])
    H = foliage_hybrid_build(F, fam)
    for h in H.nodes:
        assert 1 not in H.leaf(h)
    assert H.leaf(Supp((1,))) == {2, 3}


def test_duplicate_skeletons_are_rejected():
    F = _binary_foliage()
    G = _one_point_graft((0,), "a0", (0, 0), frozenset({0}))
    with pytest.raises(InconsistentFoliageFamilyError) as info:
        foliage_family(F, [G, G])
    assert any(v.startswith("(b)") for v in info.value.violations)


@pytest.mark.parametrize("n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
def test_foliage_hybrid_laws_exhaustive(n):
    points = (0, 1)
    candidates = all_subsets(points)
    for tree in enumerate_tree_shapes(n, distinct=True):
        for F in enumerate_foliage_trees(tree, points, nonincreasing=True):
            for grafts in enumerate_foliage_families(F, max_grafts=1, max_implant=1):
                fam = foliage_family(F, grafts)
                H = foliage_hybrid_build(F, fam)
                assert check_loss_laws(fam, H, candidates) == []
                assert check_foliage_hybrid_laws(fam, H) == [], (F.leaf_map, [G.leaf_map for G in grafts])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_foliage_hybrid_laws_random_pairs(seed, n):
    rng = np.random.default_rng(seed)
    F = random_foliage_tree(random_tree(n, rng), range(3), rng)
    fam = foliage_family(F, random_foliage_family(F, rng, max_grafts=2))
    H = foliage_hybrid_build(F, fam)
    assert check_loss_laws(fam, H, all_subsets(range(3))) == []
    assert check_foliage_hybrid_laws(fam, H) == []


@pytest.mark.parametrize("seed", range(BAIRE_FAMILY_SAMPLES))
def test_baire_foliage_hybrid_laws(seed):
    rng = np.random.default_rng(seed)
    F, grafts = random_baire_foliage_family(rng, depth=3, width=3)
    fam = foliage_family(F, grafts)
    H = foliage_hybrid_build(F, fam)
    host_leaves = [F.leaf(x) for x in F.nodes]
    assert check_loss_laws(fam, H, host_leaves) == []
    assert check_foliage_hybrid_laws(fam, H) == []


def main():
    print("=" * 60)
    print("  Grafting — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
