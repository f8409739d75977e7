"""
Test Runner — Baire sets: compact codes, classify, shadows, density, standard tree.

Usage:
    python -m PiTree_Engine.baire.test_baire
"""

import os
import sys

import pytest
from hypothesis import given, settings, strategies as st

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import (
    EMPTY,
    FULL,
    INSIDE,
    OUTSIDE,
    SPLIT,
    BairePoint,
    Compact,
    Cylinder,
    CylFamilyUnion,
    Diff,
    FiniteCylinderFamily,
    Intersect,
    TailPolicy,
    Union,
    classify,
    co_inside_children,
    contains,
    expr_from_json,
    expr_to_json,
    is_closed,
    is_open,
    support_children,
)
from PiTree_Engine.baire.shadow import (
    confinement_depth,
    depth_shadow,
    is_dense_at,
    pi_dense_at,
    pi_density_guarantee,
)
from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.errors import (
    InvalidCompactCodeError,
    OracleStratumError,
    PreconditionError,
    SchemaViolationError,
    UndecidableAtDepthError,
)
from PiTree_Engine.foliage.predicates import foliage_flags

ZERO = CompactCode.point(())
NOT_ZERO = Diff(FULL, Compact(ZERO))


# ---------------------------------------------------------------------------
# Compact codes
# ---------------------------------------------------------------------------

def test_compact_code_validation():
    with pytest.raises(InvalidCompactCodeError):
        CompactCode({(): set()}, 1)
    with pytest.raises(InvalidCompactCodeError):
        CompactCode({(): {0, 1}, (0,): {0}}, 2)
    with pytest.raises(InvalidCompactCodeError):
        CompactCode({(0, 0): {1}}, 1)


def test_compact_code_walk():
    code = CompactCode.uniform({0, 1}, 2)
    assert code.in_tree((1, 0, 0)) and not code.in_tree((2,)) and not code.in_tree((1, 1, 3))
    assert code.allowed_at((1,)) == {0, 1}
    assert code.allowed_at((1, 1, 0)) == {0}
    assert code.max_branching == 2
    assert CompactCode.point((1, 1)).contains_point((1, 1))
    assert not CompactCode.point((1, 1)).contains_point((1, 1, 1))


def test_compact_code_drops_unreachable_entries():
    code = CompactCode({(): {1}, (1,): {0}, (5,): {2}}, 2)
    assert code == CompactCode.point((1, 0))


# ---------------------------------------------------------------------------
# classify / contains
# ---------------------------------------------------------------------------

def test_classify_examples():
    assert classify(Cylinder((0,)), (0, 1)) is INSIDE
    assert classify(Cylinder((0, 1)), (0,)) is SPLIT
    assert classify(Cylinder((0, 1)), (1,)) is OUTSIDE
    assert classify(Compact(ZERO), (0, 0)) is SPLIT
    assert classify(Compact(ZERO), (1,)) is OUTSIDE
    assert classify(NOT_ZERO, (1,)) is INSIDE
    assert classify(NOT_ZERO, (0, 0, 0)) is SPLIT


def test_compact_is_never_inside():
    code = CompactCode.uniform({0, 1, 2}, 3)
    for x in [(), (0,), (2, 1), (1, 1, 1), (0, 0, 0, 0)]:
        assert classify(Compact(code), x) is not INSIDE


def test_split_does_not_promise_a_member():
    # Kleene evaluation: min(SPLIT, SPLIT) at ⟨⟩ for an empty intersection
    e = Intersect((Cylinder((0,)), Cylinder((1,))))
    assert classify(e, ()) is SPLIT
    assert classify(e, (0,)) is OUTSIDE and classify(e, (1,)) is OUTSIDE
    assert depth_shadow(e, 1, 2).is_empty()


def test_family_classification():
    fam = FiniteCylinderFamily([(1, 2), (3, 0)])
    e = CylFamilyUnion(fam)
    assert classify(e, (1, 2, 5)) is INSIDE
    assert classify(e, (3,)) is SPLIT
    assert classify(e, (2,)) is OUTSIDE
    with pytest.raises(OracleStratumError):
        FiniteCylinderFamily([(1,), (2, 3)])


def test_contains_points():
    assert contains(NOT_ZERO, (1,))
    assert not contains(NOT_ZERO, (0, 0))
    assert contains(Union((Cylinder((2,)), Compact(ZERO))), ())
    assert not contains(Intersect((Cylinder((2,)), Compact(ZERO))), (2,))
    with pytest.raises(UndecidableAtDepthError):
        contains(NOT_ZERO, BairePoint((0, 0), TailPolicy.UNKNOWN))
    assert contains(NOT_ZERO, BairePoint((0, 3), TailPolicy.UNKNOWN))


def test_child_bounds():
    assert support_children(Cylinder((2, 5)), (2,)) == {5}
    assert support_children(Cylinder((2,)), (2,)) is None
    assert co_inside_children(NOT_ZERO, (0, 0)) == {0}
    assert co_inside_children(NOT_ZERO, (1,)) == frozenset()
    assert co_inside_children(Compact(ZERO), ()) is None
    assert support_children(EMPTY, (4,)) == frozenset()


def test_structural_topology():
    assert is_open(NOT_ZERO) and not is_closed(NOT_ZERO)
    assert is_closed(Compact(ZERO)) and not is_open(Compact(ZERO))
    assert is_open(Cylinder((1,))) and is_closed(Cylinder((1,)))


def test_expression_json():
    e = Union((Cylinder((1, 2)), Diff(FULL, Compact(CompactCode.uniform({0, 1}, 2)))))
    assert expr_from_json(expr_to_json(e)) == e
    assert expr_to_json(Compact(ZERO)) == {"op": "compact", "depth": 0, "table": {}}
    with pytest.raises(SchemaViolationError):
        expr_from_json({"op": "compact", "depth": 1, "table": {"": []}})
    with pytest.raises(SchemaViolationError):
        expr_from_json({"op": "xor", "args": []})


_SMALL = st.integers(min_value=0, max_value=2)
_CYLS = st.lists(_SMALL, max_size=3).map(lambda s: Cylinder(tuple(s)))
_COMPACTS = st.sampled_from([
    Compact(ZERO),
    Compact(CompactCode.point((1, 2))),
    Compact(CompactCode.uniform({0, 1}, 2)),
])
_EXPRS = st.recursive(
    st.one_of(_CYLS, _COMPACTS, st.just(FULL), st.just(EMPTY)),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(Union),
        st.tuples(inner, inner).map(Intersect),
        st.tuples(inner, inner).map(lambda ab: Diff(*ab)),
    ),
    max_leaves=6,
)


@settings(max_examples=150, deadline=None)
@given(_EXPRS, st.lists(_SMALL, max_size=4))
def test_classify_is_sound_against_points(e, prefix):
    point = tuple(prefix) + (0,) * 4
    member = contains(e, point)
    for k in range(len(point) + 1):
        verdict = classify(e, point[:k])
        if verdict is INSIDE:
            assert member
        elif verdict is OUTSIDE:
            assert not member


# ---------------------------------------------------------------------------
# Shadows
# ---------------------------------------------------------------------------

def test_shadow_examples():
    sh = depth_shadow(FULL, 1, 3)
    assert sh.inside == {(0,), (1,), (2,)} and sh.split == frozenset()
    sh = depth_shadow(NOT_ZERO, 2, 2)
    assert sh.split == {(0, 0)}
    assert sh.inside == {(0, 1), (1, 0), (1, 1)}
    sh = depth_shadow(EMPTY, 3, 2)
    assert sh.inside == frozenset() and sh.split == frozenset() and sh.is_empty()


def test_shadow_matches_pointwise_classify():
    e = Union((Cylinder((1, 1)), Diff(Cylinder((2,)), Compact(CompactCode.point((2, 0))))))
    sh = depth_shadow(e, 3, 3)
    for y in sh.inside | sh.split:
        assert classify(e, y) is sh.code_at(y)
    assert sh.code_at((0, 0, 0)) is OUTSIDE


@settings(max_examples=100, deadline=None)
@given(_EXPRS, _EXPRS)
def test_shadow_boolean_coherence(a, b):
    sa, sb = depth_shadow(a, 3, 3), depth_shadow(b, 3, 3)
    assert depth_shadow(Union((a, b)), 3, 3) == sa.join(sb)
    assert depth_shadow(Intersect((a, b)), 3, 3) == sa.meet(sb)
    assert depth_shadow(Diff(a, b), 3, 3) == sa.minus(sb)


def test_confinement_depth():
    assert confinement_depth(Cylinder((1, 2)), 3, 4) == 2
    assert confinement_depth(Compact(CompactCode.point((1,))), 3, 4) == 3
    assert confinement_depth(EMPTY, 3, 4) is None


# ---------------------------------------------------------------------------
# Density
# ---------------------------------------------------------------------------

def test_pi_density_examples():
    assert pi_dense_at(FULL, (), 3, 3, 3)
    assert pi_dense_at(NOT_ZERO, (), 4, 4, 3)
    assert not pi_dense_at(NOT_ZERO, (), 4, 4, 4)
    assert not pi_dense_at(Cylinder((0,)), (), 3, 4, 2)
    with pytest.raises(PreconditionError):
        pi_dense_at(FULL, (), 2, 2, 3)


@pytest.mark.parametrize("code", [
    ZERO,
    CompactCode.point((3, 1)),
    CompactCode.uniform({0, 1}, 2),
    CompactCode({(): {0, 2, 4}, (0,): {1}, (2,): {0, 1}, (4,): {3}}, 2),
])
def test_density_guarantee_for_compact_complements(code):
    width = pi_density_guarantee(code, 2)
    e = Diff(FULL, Compact(code))
    assert pi_dense_at(e, (), 3, width, 2)
    # π-dense implies dense
    assert is_dense_at(e, (), 3, width)


def test_dense_but_not_pi_dense():
    assert is_dense_at(NOT_ZERO, (), 3, 3)
    assert not is_dense_at(Cylinder((0,)), (), 2, 2)


# ---------------------------------------------------------------------------
# Universe and standard tree
# ---------------------------------------------------------------------------

def test_universe_disjointness_lookahead():
    a, b = Cylinder((0, 0, 0, 1)), Cylinder((0, 0, 0, 2))
    assert BaireUniverse(2, 2, lookahead_depth=2).is_disjoint(a, b)
    with pytest.raises(UndecidableAtDepthError):
        BaireUniverse(2, 2, lookahead_depth=1).is_disjoint(a, b)
    assert not BaireUniverse(2, 2).is_disjoint(Cylinder((0,)), Cylinder((0, 1)))


def test_universe_singleton_is_undecidable():
    with pytest.raises(UndecidableAtDepthError):
        BaireUniverse(3, 3).is_singleton(Compact(ZERO))


def test_standard_tree_examples():
    S1 = std_tree(StdTreeView(1, 2))
    assert S1.nodes == {()}
    assert S1.universe.equal(S1.leaf(()), FULL)

    S2 = std_tree(StdTreeView(2, 2))
    U = BaireUniverse(1, 2)
    assert U.equal(U.union(S2.leaf((0,)), S2.leaf((1,))), S2.leaf(()))
    assert U.is_disjoint(S2.leaf((0,)), S2.leaf((1,)))


def test_standard_tree_flags():
    flags = foliage_flags(std_tree(StdTreeView(3, 3)))
    assert flags.splittable is True
    assert flags.nonincreasing is True
    assert flags.locally_strict is True
    assert flags.nonempty_leaves is True
    assert flags.complete is True
    assert flags.strict_branches is None


def test_standard_view_is_lazy():
    view = StdTreeView(2, 2)
    sons = view.sons((1,))
    assert [next(sons) for _ in range(3)] == [(1, 0), (1, 1), (1, 2)]
    assert view.parent_of((1, 4)) == (1,) and view.parent_of(()) is None


def main():
    print("=" * 60)
    print("  Baire sets — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
