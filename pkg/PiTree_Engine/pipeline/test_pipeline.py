"""
Test Runner — Pipeline: blueprints, the stage recursion, the lazy π-tree and shoots.

Usage:
    python -m PiTree_Engine.pipeline.test_pipeline
"""

import os
import sys
from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import EMPTY, FULL, Compact, Cylinder, Diff, contains
from PiTree_Engine.baire.shadow import confinement_depth, depth_shadow
from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.errors import (
    DensityViolationError,
    InvalidHybridNodeError,
    NodeNotFoundError,
    NotInOmegaError,
    NotProperSubsetError,
    PreconditionError,
    SampleOutsideError,
)
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.predicates import foliage_flags
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.grafting.hybrid import Graft, Supp
from PiTree_Engine.pipeline.blueprint import (
    ImplantNode,
    blueprint_build,
    cantor_pair,
    cantor_unpair,
    materialize_blueprint,
    omega_delta_max,
)
from PiTree_Engine.pipeline.invariants import blueprint_checks, failed_checks, pi_tree_evidence, pipeline_checks
from PiTree_Engine.pipeline.lazy_view import materialize_pi_tree
from PiTree_Engine.pipeline.recursion import PipelineState, pipeline_run, pipeline_step
from PiTree_Engine.pipeline.shoots import (
    certify_shoot,
    grows_into_subspace_check,
    preserves_shoots_check,
    preserving_node,
    shoot_samples,
    shoots_into_check,
    shoots_refinement,
)
from PiTree_Engine.trees.fintree import FinTree

ZERO = CompactCode.point(())
ONE_ZERO = CompactCode.point((1,))
TWO_BRANCH = CompactCode.uniform([0, 1], 2)
NO_ZERO = Diff(FULL, Compact(ZERO))


def _imp(target, level, root=(), stage=0):
    return ImplantNode(stage, root, tuple(target), level)


@pytest.fixture(scope="module")
def zero_bp():
    return blueprint_build((), NO_ZERO)


@pytest.fixture(scope="module")
def one_stage():
    return pipeline_run([ZERO], 1, depth=4, width=4)


# ---------------------------------------------------------------------------
# Blueprint oracles
# ---------------------------------------------------------------------------

def test_cantor_pairing_examples():
    assert [cantor_pair(0, j) for j in range(5)] == [0, 2, 5, 9, 14]
    assert cantor_unpair(0) == (0, 0)
    assert cantor_unpair(1) == (1, 0)
    assert cantor_unpair(2) == (0, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_cantor_unpair_inverts_pair(k):
    assert cantor_pair(*cantor_unpair(k)) == k


def test_oracles_for_one_removed_point():
    omega, delta, is_max = omega_delta_max((), NO_ZERO)
    assert all(delta((0,) * k) for k in range(6))
    assert not delta((0, 1)) and omega((0, 1))
    assert is_max((0, 0, 3)) and is_max((2,))
    assert not is_max((2, 0)) and not is_max((0, 0))


def test_oracles_below_a_nonempty_root():
    O = Diff(Cylinder((1,)), Compact(ONE_ZERO))
    _, delta, _ = omega_delta_max((1,), O)
    assert [delta((1,) + (0,) * k) for k in range(4)] == [True] * 4
    assert not delta((1, 2)) and not delta((2,))


def test_blueprint_rejects_improper_sets():
    with pytest.raises(NotProperSubsetError):
        blueprint_build((), FULL)
    with pytest.raises(NotProperSubsetError):
        blueprint_build((1,), Cylinder((2,)))


def test_partition_examples(zero_bp):
    assert zero_bp.partition_enum((), (), 5) == [(1,), (3,), (6,), (10,), (15,)]
    assert zero_bp.partition_assign((0, 2)) == (0, 0)
    assert zero_bp.partition_assign((1,)) == ()
    assert zero_bp.partition_assign((2,)) == (0,)
    with pytest.raises(NotInOmegaError):
        zero_bp.partition_assign((0, 0))


def test_partition_round_trip_and_disjoint_fibers(zero_bp):
    fibers = {d: zero_bp.partition_enum((), d, 20) for d in [(), (0,), (0, 0)]}
    for d, members in fibers.items():
        assert all(zero_bp.partition_assign(z) == d for z in members)
    assert not set(fibers[()]) & set(fibers[(0,)])
    assert not set(fibers[(0,)]) & set(fibers[(0, 0)])


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=300))
def test_every_son_lands_in_its_fiber(k):
    bp = blueprint_build((), NO_ZERO)
    z = bp.omega_son((), k)
    d = bp.partition_assign(z)
    _, j = cantor_unpair(k)
    assert z in bp.partition_enum((), d, j + 1)


def test_blueprint_sons_and_leaves(zero_bp):
    sons = list(islice(zero_bp.sons(()), 3))
    assert sons == [_imp((), 0), _imp((0,), 1), _imp((0, 0), 2)]
    assert list(islice(zero_bp.sons(_imp((), 0)), 3)) == [(1,), (3,), (6,)]
    assert next(zero_bp.sons(_imp((0,), 1))) == _imp((0,), 0)
    assert list(zero_bp.sons((3,))) == []
    assert zero_bp.leaf(()) == NO_ZERO
    assert zero_bp.leaf((3,)) == Cylinder((3,))
    assert zero_bp.parent_of((2,)) == _imp((0,), 1)
    assert zero_bp.parent_of(_imp((0,), 1)) == ()
    with pytest.raises(NodeNotFoundError):
        zero_bp.parent_of((3, 1))


def test_blueprint_root_leaf_matches_cut(zero_bp):
    U = BaireUniverse(4, 4)
    assert U.equal(zero_bp.leaf(()), Diff(Cylinder(()), Compact(ZERO)))
    assert U.equal(zero_bp.cut(), Compact(ZERO))


def test_materialized_blueprint_shape(zero_bp):
    T = materialize_blueprint(zero_bp, 4, 4)
    assert T.root == ()
    assert (1,) in T.nodes and (0, 0, 3) in T.nodes
    assert (0, 0, 0, 1) not in T.nodes
    for m in T.skeleton.terminal_nodes():
        assert len(T.skeleton.ancestors(m)) + 1 <= 4 + 3


@pytest.mark.parametrize("code", [ZERO, TWO_BRANCH], ids=["point", "two-branch"])
def test_blueprint_checks_pass(code):
    bp = blueprint_build((), Diff(FULL, Compact(code)))
    results = blueprint_checks(bp, 4, 4)
    assert failed_checks(results) == []
    assert all(v is True for v in results.values()), results


def test_blueprint_checks_below_a_stage_root():
    result = pipeline_run([ZERO, ONE_ZERO], 2, depth=4, width=4)
    bp = result.state.blueprint(1, (1,))
    assert failed_checks(blueprint_checks(bp, 4, 4)) == []


# ---------------------------------------------------------------------------
# Shoots
# ---------------------------------------------------------------------------

def _finite_pair():
    U = FiniteUniverse(range(4))
    skeleton = FinTree({"r": None, "a": "r", "b": "r"})
    A = FoliageTree(skeleton, {"r": frozenset(range(4)), "a": frozenset({0, 1}), "b": frozenset({2, 3})}, U)
    B = FoliageTree(skeleton, {"r": frozenset(range(4)), "a": frozenset({0}), "b": frozenset({2, 3})}, U)
    return A, B


def test_shoots_refinement_identity_and_witness():
    A, B = _finite_pair()
    assert shoots_refinement(A, "r", A, "r")
    assert not shoots_refinement(A, "r", B, "r")
    assert shoots_refinement(A, "r", B, "r", exceptions={"a"})
    with pytest.raises(PreconditionError):
        shoots_refinement(A, "a", A, "a")


def test_implant_node_refines_its_anchor(zero_bp):
    std = StdTreeView(4, 4)
    node = _imp((0, 0), 1)
    assert shoots_refinement(zero_bp, node, std, (0,), exceptions={_imp((0, 0), 0)})
    assert not shoots_refinement(zero_bp, node, std, (0,))


def test_preserving_node_recipe(zero_bp):
    node, exceptions = preserving_node(zero_bp, (1, 5), ())
    assert node == _imp((), 0) and exceptions == ()
    node, exceptions = preserving_node(zero_bp, (0, 0, 2), ())
    assert node == _imp((0, 0, 0), 3)
    assert exceptions == (_imp((0, 0, 0), 2),)
    node, _ = preserving_node(zero_bp, (0, 2), (0,))
    assert node.anchor == (0,)
    assert preserves_shoots_check(zero_bp, [((1,), ()), ((0, 0, 2), ()), ((0, 2), (0,))])


def test_preserving_node_errors(zero_bp):
    with pytest.raises(PreconditionError):
        preserving_node(zero_bp, (1, 1), (1,))
    with pytest.raises(SampleOutsideError):
        preserving_node(zero_bp, (0, 0), ())
    with pytest.raises(SampleOutsideError):
        preserving_node(zero_bp, (1,), (0,))


# ---------------------------------------------------------------------------
# The recursion
# ---------------------------------------------------------------------------

def test_full_open_set_changes_nothing():
    state = pipeline_step(PipelineState(), FULL, 4, 4, 2)
    assert state.roots(0, 4, 4) == []
    assert state.in_m(0, ()) and not state.in_m(0, (1,))
    assert failed_checks(pipeline_checks(state, 4, 4)) == []


def test_step_preconditions():
    with pytest.raises(PreconditionError):
        pipeline_step(PipelineState(), Compact(ZERO), 4, 4, 2)
    with pytest.raises(DensityViolationError):
        pipeline_step(PipelineState(), Diff(FULL, Compact(CompactCode.uniform([0, 1, 2], 2))), 4, 4, 2)
    with pytest.raises(PreconditionError):
        pipeline_run([ZERO], 2)


def test_one_point_removal(one_stage):
    state = one_stage.state
    assert state.roots(0, 4, 4) == [()]
    assert state.in_m(0, (1,)) and state.in_m(0, (0, 0, 2))
    assert not state.in_m(0, ()) and not state.in_m(0, (0,)) and not state.in_m(0, (1, 1))
    assert depth_shadow(one_stage.loss, 3, 3).split == frozenset({(0, 0, 0)})
    assert [bp.v for bp in one_stage.family] == [()]
    assert failed_checks(pipeline_checks(state, 4, 4)) == []


def test_frontier_covers_the_survivors(one_stage):
    U = BaireUniverse(4, 4)
    assert U.equal(one_stage.state.survivors(), NO_ZERO)


def test_second_stage_roots_sit_in_the_frontier():
    result = pipeline_run([ZERO, ONE_ZERO], 2, depth=4, width=4)
    state = result.state
    assert state.roots(1, 4, 4) == [(1,)]
    assert all(state.in_m(0, r) for r in state.roots(1, 4, 4))
    assert state.in_m(1, (1, 1)) and not state.in_m(1, (1,))
    assert depth_shadow(result.loss, 3, 3).split == frozenset({(0, 0, 0), (1, 0, 0)})
    assert failed_checks(pipeline_checks(state, 4, 4)) == []


@pytest.mark.parametrize("codes", [
    [ZERO],
    [ZERO, ONE_ZERO],
    [ZERO, ONE_ZERO, TWO_BRANCH],
], ids=["one", "two", "three"])
def test_every_stage_passes_its_checks(codes):
    result = pipeline_run(codes, depth=4, width=4, threshold=2)
    U = BaireUniverse(4, 4)
    expected = U.union_all(Compact(c) for c in codes)
    assert U.equal(result.loss, expected)
    for n in range(len(codes)):
        partial = PipelineState(result.state.opens[:n + 1], result.state.universe, result.state.memo)
        assert failed_checks(pipeline_checks(partial, 4, 4)) == []


def test_stage_checks_include_the_loss_union():
    state = pipeline_run([ZERO, ONE_ZERO], depth=4, width=4, threshold=2).state
    results = pipeline_checks(state, 4, 4)
    assert set(results) == {"roots-match", "frontier-antichain", "frontier-avoids-roots",
                            "family-consistent", "frontier-covers", "loss-complement", "loss-union"}
    assert results["loss-union"] is True


# ---------------------------------------------------------------------------
# The lazy π-tree
# ---------------------------------------------------------------------------

def test_empty_pipeline_is_the_standard_tree():
    result = pipeline_run([], depth=3, width=3)
    assert result.loss == EMPTY and result.family == []
    H = materialize_pi_tree(result.view, 3, 3)
    S = std_tree(StdTreeView(3, 3))
    assert {h.node for h in H.nodes} == set(S.nodes)
    assert {h.node for h in H.skeleton.frontier} == set(S.skeleton.frontier)
    assert list(islice(result.view.sons(Supp((1,))), 2)) == [Supp((1, 0)), Supp((1, 1))]


def test_lazy_view_sons_and_parents(one_stage):
    view = one_stage.view
    assert view.root == Supp(())
    assert list(islice(view.sons(Supp(())), 3)) == [
        Graft(0, _imp((), 0)), Graft(0, _imp((0,), 1)), Graft(0, _imp((0, 0), 2))]
    assert view.parent_of(Supp((1,))) == Graft(0, _imp((), 0))
    assert view.parent_of(Supp((2,))) == Graft(0, _imp((0,), 1))
    assert view.parent_of(Supp((1, 3))) == Supp((1,))
    assert view.parent_of(Graft(0, _imp((0,), 1))) == Supp(())
    assert list(islice(view.sons(Graft(0, _imp((), 0))), 2)) == [Supp((1,)), Supp((3,))]


def test_lazy_view_rejects_explanted_nodes(one_stage):
    view = one_stage.view
    assert not view.is_support((0, 0))
    assert view.explant_owner((0, 0)).v == ()
    with pytest.raises(InvalidHybridNodeError):
        view.leaf(Supp((0,)))


def test_lazy_leaves_drop_the_loss(one_stage):
    view = one_stage.view
    leaf = view.leaf(Graft(0, _imp((0, 0), 2)))
    assert not contains(leaf, (0, 0, 0, 0))
    assert contains(leaf, (0, 0, 3))
    assert contains(view.leaf(Supp((2,))), (2, 1))


def test_materialized_pi_tree_hangs_implants_under_the_root():
    result = pipeline_run([ZERO], depth=5, width=4)
    H = materialize_pi_tree(result.view, 5, 4)
    sons = H.skeleton.sons_of(Supp(()))
    assert sons and all(isinstance(h, Graft) and h.node.level == len(h.node.target) for h in sons)
    assert all(not contains(H.leaf(h), (0, 0, 0, 0, 0)) for h in H.nodes)


def test_materialization_is_monotone():
    result = pipeline_run([ZERO], depth=4, width=4)
    small = materialize_pi_tree(result.view, 3, 3)
    large = materialize_pi_tree(result.view, 4, 4)
    assert small.nodes <= large.nodes
    assert all(large.parent_of(h) == small.parent_of(h) for h in small.nodes)


def test_pi_tree_evidence_for_one_removed_point():
    result = pipeline_run([ZERO], depth=5, width=4)
    evidence = pi_tree_evidence(result.view, 5, 4)
    assert evidence == {key: True for key in evidence}
    assert set(evidence) >= {"rooted", "locally-strict", "splittable", "root-leaf", "narrowing"}


def test_narrowing_counts_nested_blueprint_roots():
    result = pipeline_run([ZERO, ONE_ZERO], depth=4, width=4, threshold=2)
    H = materialize_pi_tree(result.view, 4, 4)
    # ⟨1,1,0⟩ sits above the blueprints rooted at ⟨⟩ and ⟨1⟩
    m = Supp((1, 1, 0))
    assert len(H.skeleton.ancestors(m)) + 1 == 6
    assert confinement_depth(H.leaf(m), 4, 4) == 3
    assert pi_tree_evidence(result.view, 4, 4)["narrowing"] is True


def test_narrowing_holds_for_three_removed_compacts():
    result = pipeline_run([ZERO, ONE_ZERO, TWO_BRANCH], depth=4, width=4, threshold=2)
    assert pi_tree_evidence(result.view, 4, 4)["narrowing"] is True


def test_pi_tree_evidence_for_the_empty_pipeline():
    result = pipeline_run([], depth=3, width=3)
    assert failed_checks(pi_tree_evidence(result.view)) == []
    flags = foliage_flags(materialize_pi_tree(result.view))
    assert flags.locally_strict is True


# ---------------------------------------------------------------------------
# Shoots into the standard tree
# ---------------------------------------------------------------------------

def test_certificates_cover_both_cases(one_stage):
    view = one_stage.view
    root_case = certify_shoot(view, (1, 2), ())
    assert root_case.case == "blueprint" and root_case.holds
    assert root_case.scope_node == Graft(0, _imp((), 0))
    explant_case = certify_shoot(view, (0, 1), (0,))
    assert explant_case.case == "blueprint" and explant_case.holds
    assert explant_case.scope_node == Graft(0, _imp((0,), 0))
    support_case = certify_shoot(view, (2, 1), (2,))
    assert support_case.case == "support" and support_case.holds
    assert support_case.scope_node == Supp((2,))


def test_certificates_revalidate(one_stage):
    view = one_stage.view
    std = StdTreeView(view.depth, view.width)
    cert = certify_shoot(view, (0, 0, 2), ())
    assert cert.exceptions == (Graft(0, _imp((0, 0, 0), 2)),)
    assert shoots_refinement(view, cert.scope_node, std, cert.witness, cert.exceptions,
                             node_map=lambda h: h.node if isinstance(h, Supp) else h)


def test_sample_in_the_loss_is_rejected(one_stage):
    with pytest.raises(SampleOutsideError):
        certify_shoot(one_stage.view, (0, 0), ())


def test_shoots_into_on_sampled_pairs():
    result = pipeline_run([ZERO], depth=5, width=4)
    samples = shoot_samples(result.view, 50, seed=0)
    assert len(samples) == 50
    cases = {certify_shoot(result.view, p, y).case for p, y in samples}
    assert cases == {"support", "blueprint"}
    assert shoots_into_check(result.view, samples)
    assert grows_into_subspace_check(result.view, samples)


def test_empty_pipeline_shoots_into_itself():
    result = pipeline_run([], depth=3, width=3)
    cert = certify_shoot(result.view, (1, 1), (1,))
    assert cert.case == "support" and cert.exceptions == () and cert.holds


def main():
    print("=" * 60)
    print("  Pipeline — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
