"""
Truncated invariant checks for blueprints, pipeline stages and the final
π-tree.

Every check returns True, False, or None when the shadow stratum cannot
settle it.  Results are dicts keyed by check id; ``failed_checks`` lists the
ids that came out False.

    blueprint_checks   structure of one blueprint at (depth, width)
    pipeline_checks    the recursion after its last stage
    pi_tree_evidence   flags and branch narrowing of the materialized hybrid
"""

from __future__ import annotations

import logging
from itertools import combinations, islice
from typing import Callable

from PiTree_Engine.baire.setexpr import FULL, SPLIT, Compact, Cylinder, CylFamilyUnion, Diff, classify, contains
from PiTree_Engine.baire.shadow import confinement_depth, depth_shadow, stratum
from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.errors import InvariantFailureError, UndecidableAtDepthError
from PiTree_Engine.foliage.predicates import foliage_flags, locally_strict_at
from PiTree_Engine.grafting.anatomy import graft_anatomy
from PiTree_Engine.grafting.foliage_hybrid import foliage_graft_check
from PiTree_Engine.grafting.hybrid import Supp
from PiTree_Engine.pipeline.blueprint import GraftBlueprint, ImplantNode, blueprint_box, materialize_blueprint
from PiTree_Engine.pipeline.lazy_view import LazyHybridView, materialize_pi_tree
from PiTree_Engine.pipeline.recursion import FrontierFamily, PipelineState, box_seqs, complement_of
from PiTree_Engine.pipeline.shoots import blueprint_samples, preserves_shoots_check
from PiTree_Engine.trees.seq import comparable, is_prefix, is_proper_prefix

logger = logging.getLogger(__name__)

CheckResults = dict[str, bool | None]


def _settle(check: Callable[[], bool | None]) -> bool | None:
    try:
        value = check()
    except UndecidableAtDepthError as exc:
        logger.warning(f"check not settled at depth: {exc}")
        return None
    except InvariantFailureError as exc:
        logger.warning(f"recursion broke during a check: {exc}")
        return False
    return None if value is None else bool(value)


def failed_checks(results: CheckResults) -> list[str]:
    return sorted(k for k, v in results.items() if v is False)


def _prefix_antichain(seqs) -> bool:
    return not any(comparable(a, b) for a, b in combinations(seqs, 2))


# ---------------------------------------------------------------------------
# Blueprints
# ---------------------------------------------------------------------------

def blueprint_checks(bp: GraftBlueprint, depth: int, width: int, samples=None) -> CheckResults:
    """All blueprint check ids at (depth, width), sorted by id."""
    U = BaireUniverse(depth, width, bp.universe.lookahead_depth)
    box = blueprint_box(bp, depth, width)
    T = materialize_blueprint(bp, depth, width)
    sk = T.skeleton
    kept_max = {z for z in box.maxes if len(z) <= depth - 1}
    host = std_tree(StdTreeView(depth, width))

    def height_bound(n) -> int:
        if isinstance(n, ImplantNode):
            return bp.level_of(n.target) + 3
        if n == bp.v:
            return 1
        return bp.level_of(bp.partition_assign(n)) + 3

    def branching() -> bool:
        spread = [bp.v, *box.implants]
        return all(len(list(islice(bp.sons(n), width))) == width for n in spread)

    def bounded_chains() -> bool:
        return all(len(bp.partition_enum(x, x, 1)) == 1 for x in box.targets)

    def locally_strict() -> bool:
        interior = [x for x in sk.nodes if sk.sons_of(x) and x not in sk.frontier]
        return all(locally_strict_at(T, x) for x in interior)

    def cut() -> bool:
        support = depth_shadow(bp.cut(), depth, width).support
        delta_nodes = {y for y in stratum(depth, width) if bp.in_delta(y)}
        return support == delta_nodes and U.equal(bp.cut(), Diff(Cylinder(bp.v), bp.max_union()))

    def max_footline() -> bool:
        omega_nodes = [y for y in box_seqs(depth, width) if bp.in_omega(y)]
        covered = all(any(bp.is_max(y[:k]) for k in range(len(bp.v) + 1, len(y) + 1)) for y in omega_nodes)
        return covered and all(bp.in_omega(z + (n,)) for z in box.maxes for n in range(width))

    def fiber_partition() -> bool:
        for x in box.delta:
            if len(x) >= depth:
                continue
            ds = list(islice(bp.delta_enum(x), 3))
            fibers = [set(bp.partition_enum(x, d, width)) for d in ds]
            if any(bp.partition_assign(z) != d for d, f in zip(ds, fibers) for z in f):
                return False
            if any(f & g for f, g in combinations(fibers, 2)):
                return False
        return True

    def drop_coherence() -> bool:
        for z in box.maxes:
            d = bp.partition_assign(z)
            if not (is_prefix(z[:-1], d) and bp.in_delta(d)):
                return False
        return True

    def sons_formula() -> bool:
        if any(bp.parent_of(s) != n for n in sk.nodes for s in sk.sons_of(n)):
            return False
        if any(list(bp.sons(z)) for z in kept_max):
            return False
        for imp in box.implants:
            sons = list(islice(bp.sons(imp), width + 1))
            if imp.level >= 1:
                if sons[0] != bp.implant(imp.target, imp.level - 1):
                    return False
                sons = sons[1:]
            if not all(s[:-1] == imp.anchor and bp.in_fiber(s, imp.target) for s in sons):
                return False
        first = list(islice(bp.sons(bp.v), width))
        return first == [bp.implant(x, bp.level_of(x)) for x in islice(bp.delta_enum(bp.v), width)]

    def spine() -> bool:
        for x in box.targets:
            top = bp.level_of(x)
            if bp.parent_of(bp.implant(x, top)) != bp.v:
                return False
            if any(bp.parent_of(bp.implant(x, l)) != bp.implant(x, l + 1) for l in range(top)):
                return False
        return True

    anatomy = graft_anatomy(host.skeleton, sk)
    explant = {y for y in box.delta if y != bp.v and len(y) <= depth - 1}

    def foliage_graft() -> bool:
        check = foliage_graft_check(host, T)
        return check.is_foliage_graft and U.equal(check.cut, bp.cut())

    samples = blueprint_samples(bp, depth, width) if samples is None else samples
    checks: dict[str, Callable[[], bool]] = {
        "root": lambda: sk.least_node() == bp.v and T.leaf(bp.v) == bp.O,
        "finite-height": lambda: all(len(sk.ancestors(n)) + 1 <= height_bound(n) for n in sk.nodes),
        "branching": branching,
        "bounded-chains": bounded_chains,
        "locally-strict": locally_strict,
        "open": lambda: all(U.is_open(T.leaf(n)) for n in sk.nodes),
        "foliage-graft": foliage_graft,
        "preserves-shoots": lambda: preserves_shoots_check(bp, samples, width),
        "implant-nonempty": lambda: bool(box.implants) and not any(U.is_empty(bp.leaf(i)) for i in box.implants),
        "cut": cut,
        "max-partition": lambda: U.equal(bp.O, bp.max_union()),
        "delta-root": lambda: bp.in_delta(bp.v),
        "delta-closed": lambda: all(bp.in_delta(y[:k]) for y in box.delta for k in range(len(bp.v), len(y) + 1)),
        "max-antichain": lambda: _prefix_antichain(box.maxes),
        "max-footline": max_footline,
        "fiber-partition": fiber_partition,
        "drop-coherence": drop_coherence,
        "sons-formula": sons_formula,
        "spine": spine,
        "maxel": lambda: set(sk.maxel()) == kept_max,
        "graft": lambda: anatomy.is_graft,
        "explant": lambda: set(anatomy.explant) == explant,
    }
    results = {key: _settle(check) for key, check in sorted(checks.items())}
    logger.info(f"blueprint checks for {bp!r}: {sum(v is True for v in results.values())}/{len(results)} pass")
    return results


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------

def pipeline_checks(state: PipelineState, depth: int, width: int) -> CheckResults:
    """Checks on the last stage of ``state`` (and the loss accumulated so far)."""
    n = state.stage
    U = BaireUniverse(depth, width, state.universe.lookahead_depth)
    if n < 0:
        return {}
    frontier = state.frontier(n, depth, width)

    def roots_match() -> bool:
        expected = [x for x in state.frontier(n - 1, depth, width) if classify(state.opens[n], x) is SPLIT]
        psi = state.psi(n, depth, width)
        return [bp.v for bp in psi] == expected and all(
            bp.O == state.blueprint(n, bp.v).O and bp.stage == n for bp in psi)

    def avoids_roots() -> bool:
        # no root of stages 0..n lies at or above a frontier node
        roots = [r for i in range(n + 1) for r in state.roots(i, depth, width)]
        return not any(is_prefix(y, r) for y in frontier for r in roots)

    def family_consistent() -> bool:
        family = state.family(depth, width)
        for a, b in combinations(family, 2):
            if a.v == b.v:
                return False
            if is_proper_prefix(a.v, b.v) and not a.in_omega(b.v):
                return False
            if is_proper_prefix(b.v, a.v) and not b.in_omega(a.v):
                return False
        return True

    def loss_complement() -> bool:
        cuts = U.union_all(bp.cut() for bp in state.family(depth, width))
        return U.equal(cuts, state.loss) and U.equal(state.loss, Diff(FULL, state.survivors(n)))

    def loss_union() -> bool:
        # closed-form loss against the plain complements of U_0..U_n
        removed = U.union_all(Diff(FULL, opened) for opened in state.opens)
        return U.equal(state.loss, removed)

    checks: dict[str, Callable[[], bool]] = {
        "roots-match": roots_match,
        "frontier-antichain": lambda: _prefix_antichain(frontier),
        "frontier-avoids-roots": avoids_roots,
        "family-consistent": family_consistent,
        "frontier-covers": lambda: U.equal(CylFamilyUnion(FrontierFamily(state, n)), state.survivors(n)),
        "loss-complement": loss_complement,
        "loss-union": loss_union,
    }
    results = {key: _settle(check) for key, check in sorted(checks.items())}
    logger.info(f"stage {n} checks: {failed_checks(results) or 'all pass'}")
    return results


# ---------------------------------------------------------------------------
# The π-tree
# ---------------------------------------------------------------------------

def loss_points(state: PipelineState) -> list[tuple]:
    """The leftmost point (zero tail) of every removed compact set."""
    out = []
    for opened in state.opens:
        K = complement_of(opened)
        if not isinstance(K, Compact):
            continue
        code, prefix = K.code, ()
        while len(prefix) < code.table_depth:
            prefix = prefix + (min(code.allowed_at(prefix)),)
        out.append(prefix)
    return out


def pi_tree_evidence(view: LazyHybridView, depth: int | None = None, width: int | None = None) -> CheckResults:
    """
    End-to-end evidence on the materialized hybrid: rooted at ⟨⟩, foliage
    flags, root leaf equal to the complement of the loss, leaves avoiding the
    removed points, and branch fruits narrowing with the branch length.
    """
    depth = depth or view.depth
    width = width or view.width
    H = materialize_pi_tree(view, depth, width)
    sk, U = H.skeleton, H.universe
    flags = foliage_flags(H)
    points = loss_points(view.state)
    graft_roots = {Supp(bp.v) for bp in view.state.family(depth, width)}

    def narrowing() -> bool:
        # each blueprint root below m puts the branch one more node past its confining cylinder
        for m in sk.terminal_nodes():
            ancestors = sk.ancestors(m)
            slack = 1 + sum(1 for a in ancestors if a in graft_roots)
            conf = confinement_depth(H.leaf(m), depth, width)
            if conf is None or conf < len(ancestors) + 1 - slack:
                return False
        return True

    checks: dict[str, Callable[[], bool]] = {
        "rooted": lambda: sk.least_node() == Supp(()),
        "nonempty-leaves": lambda: flags.nonempty_leaves,
        "locally-strict": lambda: flags.locally_strict,
        "splittable": lambda: flags.splittable,
        "open": lambda: flags.open_in_universe,
        "root-leaf": lambda: U.equal(H.leaf(Supp(())), Diff(FULL, view.loss)),
        "avoids-loss": lambda: not any(contains(H.leaf(h), p) for h in sk.nodes for p in points),
        "narrowing": narrowing,
    }
    results = {key: _settle(check) for key, check in sorted(checks.items())}
    logger.info(f"π-tree evidence at depth={depth} width={width}: {failed_checks(results) or 'all pass'}")
    return results
