"""
Law and invariant suites.

A suite yields JSON instances (see instances.py) and checks one instance at
a time, returning {check id: violations}.  An empty list means the check
holds on the instance, a non-empty list carries the violations, and None
means the truncation could not settle it.

Suites never raise on a refuted law; builder errors on an instance
(inconsistent family, density violation, ...) surface as violations.

Usage:
    from PiTree_Engine.verify.suites import SuiteParams, SUITES
    suite = SUITES["tree-laws"]
    for instance in suite.instances(SuiteParams(max_nodes=3)):
        suite.check(instance, params)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from itertools import islice
from typing import Callable, Iterator

import networkx as nx
import numpy as np

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import (
    EMPTY,
    FULL,
    INSIDE,
    OUTSIDE,
    Compact,
    Cylinder,
    Diff,
    Intersect,
    SetExpr,
    Union,
    classify,
    contains,
    expr_from_json,
    expr_to_json,
)
from PiTree_Engine.baire.shadow import depth_shadow, is_dense_at, pi_dense_at, pi_density_guarantee
from PiTree_Engine.baire.standard import StdTreeView
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.config import (
    BAIRE_FAMILY_SAMPLES,
    DEFAULT_DEPTH,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    DEFAULT_WIDTH,
    MAX_ENUM_NODES,
)
from PiTree_Engine.errors import PiTreeError, PreconditionError, SchemaViolationError, UndecidableAtDepthError
from PiTree_Engine.foliage.enumerate import all_subsets, enumerate_foliage_trees, random_foliage_tree
from PiTree_Engine.foliage.foliage_tree import FoliageTree
from PiTree_Engine.foliage.laws import check_fruit_laws, check_refinement_transitive
from PiTree_Engine.foliage.universe import FiniteUniverse
from PiTree_Engine.grafting.anatomy import consistent_family, family_from_json, family_to_json, skeleton_from_json, \
    skeleton_to_json
from PiTree_Engine.grafting.enumerate import (
    enumerate_families,
    enumerate_foliage_families,
    random_baire_foliage_family,
)
from PiTree_Engine.grafting.foliage_hybrid import foliage_family, foliage_hybrid_build
from PiTree_Engine.grafting.hybrid import hybrid_build
from PiTree_Engine.grafting.laws import (
    check_branch_trace,
    check_foliage_hybrid_laws,
    check_graft_laws,
    check_hybrid_order,
    check_hybrid_sons,
    check_hybrid_tree,
    check_loss_laws,
)
from PiTree_Engine.pipeline.blueprint import blueprint_box, blueprint_build
from PiTree_Engine.pipeline.invariants import CheckResults, blueprint_checks, pi_tree_evidence, pipeline_checks
from PiTree_Engine.pipeline.recursion import PipelineState, pipeline_run
from PiTree_Engine.pipeline.shoots import (
    blueprint_samples,
    grows_into_subspace_check,
    preserves_shoots_check,
    shoot_samples,
    shoots_into_check,
    shoots_refinement,
)
from PiTree_Engine.trees.enumerate import enumerate_small_trees, enumerate_tree_shapes, random_tree
from PiTree_Engine.trees.fintree import sorted_nodes
from PiTree_Engine.trees.laws import check_tree_laws
from PiTree_Engine.trees.seq import fmt_seq
from PiTree_Engine.trees.shape import shape_flags, standard_fintree
from PiTree_Engine.verify.instances import (
    codes_from_json,
    compacts_instance,
    foliage_from_json,
    foliage_to_json,
    kind_of,
)

logger = logging.getLogger(__name__)

Violations = list[str] | None
Outcome = dict[str, Violations]

ZERO = CompactCode.point(())
ONE_ZERO = CompactCode.point((1,))
TWO_BRANCH = CompactCode.uniform([0, 1], 2)
DEFAULT_CODES = (ZERO, ONE_ZERO, TWO_BRANCH)
DENSITY_CODES = (
    ZERO,
    CompactCode.point((3, 1)),
    TWO_BRANCH,
    CompactCode({(): {0, 2, 4}, (0,): {1}, (2,): {0, 1}, (4,): {3}}, 2),
)


@dataclass(frozen=True)
class SuiteParams:
    depth: int = DEFAULT_DEPTH
    width: int = DEFAULT_WIDTH
    threshold: int = DEFAULT_THRESHOLD
    max_nodes: int = min(5, MAX_ENUM_NODES)
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    compacts: tuple = ()

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "width": self.width,
            "threshold": self.threshold,
            "max_nodes": self.max_nodes,
            "samples": self.samples,
            "seed": self.seed,
            "compacts": [c.to_json() for c in self.compacts],
        }

    @classmethod
    def from_dict(cls, data: dict, location: str = "parameters") -> "SuiteParams":
        if not isinstance(data, dict):
            raise SchemaViolationError("parameters must be an object", location)
        known = {k: data[k] for k in ("depth", "width", "threshold", "max_nodes", "samples", "seed") if k in data}
        params = cls(**known)
        if data.get("compacts"):
            params = replace(params, compacts=tuple(codes_from_json(data["compacts"], f"{location}.compacts")))
        return params


@dataclass(frozen=True)
class Suite:
    id: str
    instances: Callable[[SuiteParams], Iterator[dict]]
    check: Callable[[dict, SuiteParams], Outcome]


def _flag(ok: bool | None, message: str) -> Violations:
    if ok is None:
        return None
    return [] if ok else [message]


def _from_results(results: CheckResults, where: str) -> Outcome:
    return {k: _flag(v, f"{k} fails {where}") for k, v in results.items()}


def _merge(into: Outcome, outcome: Outcome) -> None:
    for key, v in outcome.items():
        if key not in into:
            into[key] = v
        elif v is None:
            into[key] = into[key] if into[key] else None
        elif into[key] is None:
            into[key] = v or None
        else:
            into[key] = into[key] + v


# ---------------------------------------------------------------------------
# Finite trees
# ---------------------------------------------------------------------------

def _tree_instances(params: SuiteParams) -> Iterator[dict]:
    for n in range(1, params.max_nodes + 1):
        for tree in enumerate_small_trees(n):
            yield {"kind": "tree", "tree": skeleton_to_json(tree)}
    rng = np.random.default_rng(params.seed)
    for k in range(params.samples):
        tree = random_tree(2 + k % 7, rng, rooted=False)
        yield {"kind": "tree", "tree": skeleton_to_json(tree)}


def _check_tree_laws(instance: dict, params: SuiteParams) -> Outcome:
    tree = skeleton_from_json(instance["tree"], "instance.tree")
    return {"tree-laws": check_tree_laws(tree)}


def _to_nx(tree) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(tree.nodes)
    g.add_edges_from((p, x) for x, p in tree.parent_map.items() if p is not None)
    return g


def _shape_instances(params: SuiteParams) -> Iterator[dict]:
    for n, kappa, depth in [(3, 2, 2), (4, 3, 2), (3, 1, 3)]:
        if n > params.max_nodes:
            continue
        for tree in enumerate_small_trees(n):
            yield {"kind": "shape", "tree": skeleton_to_json(tree), "kappa": kappa, "depth": depth}


def _check_tree_shape(instance: dict, params: SuiteParams) -> Outcome:
    tree = skeleton_from_json(instance["tree"], "instance.tree")
    kappa, depth = int(instance["kappa"]), int(instance["depth"])
    flagged = shape_flags(tree, kappa=kappa, depth=depth).is_truncated_alpha_kappa_tree
    iso = nx.is_isomorphic(_to_nx(tree), _to_nx(standard_fintree(depth, kappa)))
    return {"tree-shape": _flag(flagged == iso, f"α,κ flag {flagged} but isomorphism oracle {iso}")}


# ---------------------------------------------------------------------------
# Foliage trees
# ---------------------------------------------------------------------------

def _foliage_instances(params: SuiteParams) -> Iterator[dict]:
    for n in range(1, min(params.max_nodes, 3) + 1):
        for tree in enumerate_small_trees(n):
            for F in enumerate_foliage_trees(tree, (0, 1)):
                yield {"kind": "foliage", "tree": foliage_to_json(F)}
    rng = np.random.default_rng(params.seed)
    for k in range(params.samples):
        tree = random_tree(2 + k % 4, rng)
        F = random_foliage_tree(tree, range(4), rng, nonincreasing=bool(k % 2))
        yield {"kind": "foliage", "tree": foliage_to_json(F)}


def _check_fruit_laws(instance: dict, params: SuiteParams) -> Outcome:
    return {"fruit-laws": check_fruit_laws(foliage_from_json(instance["tree"], "instance.tree"))}


def _refinement_instances(params: SuiteParams) -> Iterator[dict]:
    rng = np.random.default_rng(params.seed)
    for _ in range(4 * params.samples):
        triple = []
        for _ in range(3):
            size = int(rng.integers(0, 5))
            triple.append([sorted(int(v) for v in np.flatnonzero(rng.random(4) < 0.5)) for _ in range(size)])
        yield {"kind": "sets", "points": [0, 1, 2, 3], "gamma": triple[0], "delta": triple[1], "epsilon": triple[2]}


def _check_refinement(instance: dict, params: SuiteParams) -> Outcome:
    U = FiniteUniverse(instance["points"])
    gamma, delta, epsilon = ([frozenset(s) for s in instance[k]] for k in ("gamma", "delta", "epsilon"))
    return {"refinement": check_refinement_transitive(gamma, delta, epsilon, U)}


# ---------------------------------------------------------------------------
# Grafts and hybrids
# ---------------------------------------------------------------------------

def _family_instances(params: SuiteParams) -> Iterator[dict]:
    """Every consistent family of at most two grafts on every host shape up to ``max_nodes``."""
    for n in range(1, params.max_nodes + 1):
        for host in enumerate_tree_shapes(n, distinct=True):
            for grafts in enumerate_families(host, max_grafts=2):
                yield {"kind": "family", "family": family_to_json(host, grafts)}


def _family_check(name: str, law: Callable) -> Callable[[dict, SuiteParams], Outcome]:
    def check(instance: dict, params: SuiteParams) -> Outcome:
        host, grafts = family_from_json(instance["family"], "instance.family")
        try:
            family = consistent_family(host, grafts)
            H = hybrid_build(family)
        except PiTreeError as exc:
            return {name: [f"family does not build: {exc}"]}
        return {name: law(family, H)}

    return check


def _foliage_family_instances(params: SuiteParams) -> Iterator[dict]:
    for n in range(1, params.max_nodes + 1):
        for tree in enumerate_tree_shapes(n, distinct=True):
            for F in enumerate_foliage_trees(tree, (0, 1), nonincreasing=True):
                for grafts in enumerate_foliage_families(F, max_grafts=1, max_implant=1):
                    yield {"kind": "foliage-family", "host": foliage_to_json(F),
                           "grafts": [foliage_to_json(G) for G in grafts]}
    for k in range(BAIRE_FAMILY_SAMPLES):
        yield {"kind": "baire-family", "seed": params.seed + k, "depth": 3, "width": 3}


def _build_foliage_family(instance: dict):
    kind = kind_of(instance)
    if kind == "baire-family":
        rng = np.random.default_rng(int(instance["seed"]))
        F, grafts = random_baire_foliage_family(rng, int(instance["depth"]), int(instance["width"]))
        candidates = [F.leaf(x) for x in sorted_nodes(F.nodes)]
    else:
        F = foliage_from_json(instance["host"], "instance.host")
        grafts = [foliage_from_json(g, f"instance.grafts[{k}]") for k, g in enumerate(instance["grafts"])]
        candidates = all_subsets(F.universe.full())
    fam = foliage_family(F, grafts)
    return fam, foliage_hybrid_build(F, fam), candidates


def _check_foliage_loss(instance: dict, params: SuiteParams) -> Outcome:
    fam, H, candidates = _build_foliage_family(instance)
    return {"foliage-loss": check_loss_laws(fam, H, candidates)}


def _check_foliage_hybrid(instance: dict, params: SuiteParams) -> Outcome:
    fam, H, _ = _build_foliage_family(instance)
    return {"foliage-hybrid": check_foliage_hybrid_laws(fam, H)}


# ---------------------------------------------------------------------------
# Shoots
# ---------------------------------------------------------------------------

def _shoot_instances(params: SuiteParams) -> Iterator[dict]:
    for n in range(2, min(params.max_nodes, 3) + 1):
        for tree in enumerate_tree_shapes(n):
            for F in enumerate_foliage_trees(tree, (0, 1), nonincreasing=True):
                yield {"kind": "foliage", "tree": foliage_to_json(F)}
    for code in (ZERO, TWO_BRANCH):
        yield compacts_instance([code], params.depth, params.width, params.threshold)


def _check_finite_shoots(F: FoliageTree) -> list[str]:
    bad = []
    for x in sorted_nodes(F.nodes):
        sons = sorted_nodes(F.skeleton.sons_of(x))
        if not sons:
            continue
        if not shoots_refinement(F, x, F, x):
            bad.append(f"shoots of {x!r} do not refine themselves")
        for s in sons:
            leaf = sorted(F.leaf(s), key=repr)
            if not leaf:
                continue
            B = F.with_leaves({**F.leaf_map, s: F.leaf(s) - {leaf[0]}})
            if shoots_refinement(F, x, B, x):
                bad.append(f"son {s!r} with a larger leaf passed the refinement test")
            if len(sons) > 1 and not shoots_refinement(F, x, B, x, exceptions={s}):
                bad.append(f"excepting {s!r} does not restore the refinement")
    return bad


def _check_blueprint_shoots(instance: dict) -> list[str]:
    depth, width = int(instance["depth"]), int(instance["width"])
    code = codes_from_json(instance["compacts"], "instance.compacts")[0]
    bp = blueprint_build((), Diff(FULL, Compact(code)), universe=BaireUniverse(depth, width))
    bad = []
    if not preserves_shoots_check(bp, blueprint_samples(bp, depth, width), width):
        bad.append("blueprint does not preserve shoots")
    std = StdTreeView(depth, width)
    for imp in islice(blueprint_box(bp, depth, width).implants, 8):
        exceptions = (bp.implant(imp.target, imp.level - 1),) if imp.level else ()
        try:
            refines = shoots_refinement(bp, imp, std, imp.anchor, exceptions, width)
        except PreconditionError:
            # nothing besides the exception to compare
            continue
        if not refines:
            bad.append(f"{imp!r} does not refine the shoots of {fmt_seq(imp.anchor)}")
    return bad


def _check_shoot_laws(instance: dict, params: SuiteParams) -> Outcome:
    if kind_of(instance) == "foliage":
        return {"shoot-laws": _check_finite_shoots(foliage_from_json(instance["tree"], "instance.tree"))}
    return {"shoot-laws": _check_blueprint_shoots(instance)}


# ---------------------------------------------------------------------------
# Baire sets
# ---------------------------------------------------------------------------

_LEAF_CODES = (ZERO, CompactCode.point((1, 2)), TWO_BRANCH)


def random_expr(rng: np.random.Generator, depth: int = 2) -> SetExpr:
    """Random expression over cylinders, a few compact codes, FULL and EMPTY."""
    if depth == 0 or rng.random() < 0.35:
        pick = int(rng.integers(4))
        if pick == 0:
            return Cylinder(tuple(int(v) for v in rng.integers(0, 3, size=int(rng.integers(0, 4)))))
        if pick == 1:
            return Compact(_LEAF_CODES[int(rng.integers(len(_LEAF_CODES)))])
        return FULL if pick == 2 else EMPTY
    a, b = random_expr(rng, depth - 1), random_expr(rng, depth - 1)
    op = int(rng.integers(3))
    if op == 0:
        return Union((a, b))
    if op == 1:
        return Intersect((a, b))
    return Diff(a, b)


def _expr_instances(params: SuiteParams) -> Iterator[dict]:
    rng = np.random.default_rng(params.seed)
    for _ in range(2 * params.samples):
        point = [int(v) for v in rng.integers(0, 3, size=int(rng.integers(0, 5)))]
        yield {"kind": "expr", "expr": expr_to_json(random_expr(rng)), "point": point}


def _check_classify(instance: dict, params: SuiteParams) -> Outcome:
    e = expr_from_json(instance["expr"], "instance.expr")
    point = tuple(instance["point"]) + (0,) * 4
    member = contains(e, point)
    bad = []
    for k in range(len(point) + 1):
        verdict = classify(e, point[:k])
        if (verdict is INSIDE and not member) or (verdict is OUTSIDE and member):
            bad.append(f"classify at {fmt_seq(point[:k])} says {verdict.name} but membership is {member}")
    return {"classify-soundness": bad}


def _pair_instances(params: SuiteParams) -> Iterator[dict]:
    rng = np.random.default_rng(params.seed)
    for _ in range(params.samples):
        yield {"kind": "expr-pair", "a": expr_to_json(random_expr(rng)), "b": expr_to_json(random_expr(rng))}


def _check_shadow_algebra(instance: dict, params: SuiteParams) -> Outcome:
    a, b = expr_from_json(instance["a"], "instance.a"), expr_from_json(instance["b"], "instance.b")
    d, w = params.depth, params.width
    sa, sb = depth_shadow(a, d, w), depth_shadow(b, d, w)
    bad = []
    if depth_shadow(Union((a, b)), d, w) != sa.join(sb):
        bad.append("shadow of a union is not the join")
    if depth_shadow(Intersect((a, b)), d, w) != sa.meet(sb):
        bad.append("shadow of an intersection is not the meet")
    if depth_shadow(Diff(a, b), d, w) != sa.minus(sb):
        bad.append("shadow of a difference is not the difference")
    return {"shadow-algebra": bad}


def _density_instances(params: SuiteParams) -> Iterator[dict]:
    for code in params.compacts or DENSITY_CODES:
        yield {"kind": "compact", "code": code.to_json()}


def _check_density(instance: dict, params: SuiteParams) -> Outcome:
    code = codes_from_json([instance["code"]], "instance.code")[0]
    width = pi_density_guarantee(code, params.threshold)
    e = Diff(FULL, Compact(code))
    where = f"for the complement of {code!r} at width {width}"
    return {
        "pi-dense": _flag(pi_dense_at(e, (), params.depth, width, params.threshold), f"not π-dense {where}"),
        "dense": _flag(is_dense_at(e, (), params.depth, width), f"π-dense but not dense {where}"),
    }


# ---------------------------------------------------------------------------
# The construction
# ---------------------------------------------------------------------------

def _run(instance: dict):
    codes = codes_from_json(instance["compacts"], "instance.compacts")
    depth, width, threshold = int(instance["depth"]), int(instance["width"]), int(instance["threshold"])
    return codes, pipeline_run(codes, depth=depth, width=width, threshold=threshold, verify=False), depth, width


def _blueprint_instances(params: SuiteParams) -> Iterator[dict]:
    runs = [list(params.compacts)] if params.compacts else [[ZERO], [TWO_BRANCH], [ZERO, ONE_ZERO]]
    for codes in runs:
        yield compacts_instance(codes, params.depth, params.width, params.threshold)


def _check_blueprints(instance: dict, params: SuiteParams) -> Outcome:
    try:
        _, result, depth, width = _run(instance)
    except PiTreeError as exc:
        return {"pipeline-run": [str(exc)]}
    out: Outcome = {}
    for bp in result.state.family(depth - 1, width):
        _merge(out, _from_results(blueprint_checks(bp, depth, width), f"for {bp!r}"))
    return out


def _pipeline_instances(params: SuiteParams) -> Iterator[dict]:
    codes = list(params.compacts or DEFAULT_CODES)
    for k in range(1, len(codes) + 1):
        yield compacts_instance(codes[:k], params.depth, params.width, params.threshold)


def _check_pipeline(instance: dict, params: SuiteParams) -> Outcome:
    try:
        _, result, depth, width = _run(instance)
    except PiTreeError as exc:
        return {"pipeline-run": [str(exc)]}
    state = result.state
    out: Outcome = {}
    for n in range(state.stage + 1):
        partial = PipelineState(state.opens[:n + 1], state.universe, state.memo)
        _merge(out, _from_results(pipeline_checks(partial, depth, width), f"after stage {n}"))
    return out


def _pi_tree_instances(params: SuiteParams) -> Iterator[dict]:
    codes = list(params.compacts) if params.compacts else [ZERO]
    yield compacts_instance(codes, params.depth, params.width, params.threshold)


def _check_pi_tree(instance: dict, params: SuiteParams) -> Outcome:
    try:
        _, result, depth, width = _run(instance)
    except PiTreeError as exc:
        return {"pipeline-run": [str(exc)]}
    view = result.view
    samples = shoot_samples(view, params.samples, params.seed)
    if instance.get("corrupt"):
        # test fixture: forget the loss so leaves keep the removed points
        view.loss = EMPTY
    out = _from_results(pi_tree_evidence(view, depth, width), "on the materialized π-tree")
    out["shoots-into"] = _attempt(lambda: shoots_into_check(view, samples), "a sampled shoot certificate fails")
    out["grows-into"] = _attempt(lambda: grows_into_subspace_check(view, samples),
                                 "a sample does not grow into its cylinder")
    return out


def _attempt(check: Callable[[], bool], message: str) -> Violations:
    try:
        return _flag(check(), message)
    except UndecidableAtDepthError as exc:
        logger.warning(f"sampled check not settled at depth: {exc}")
        return None
    except PiTreeError as exc:
        return [str(exc)]


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------

SUITES: dict[str, Suite] = {
    s.id: s for s in (
        Suite("tree-laws", _tree_instances, _check_tree_laws),
        Suite("tree-shape", _shape_instances, _check_tree_shape),
        Suite("fruit-laws", _foliage_instances, _check_fruit_laws),
        Suite("refinement", _refinement_instances, _check_refinement),
        Suite("graft-anatomy", _family_instances, _family_check("graft-anatomy", lambda fam, H: check_graft_laws(fam))),
        Suite("hybrid-tree", _family_instances, _family_check("hybrid-tree", check_hybrid_tree)),
        Suite("hybrid-order", _family_instances, _family_check("hybrid-order", check_hybrid_order)),
        Suite("hybrid-sons", _family_instances, _family_check("hybrid-sons", check_hybrid_sons)),
        Suite("branch-trace", _family_instances, _family_check("branch-trace", check_branch_trace)),
        Suite("foliage-loss", _foliage_family_instances, _check_foliage_loss),
        Suite("foliage-hybrid", _foliage_family_instances, _check_foliage_hybrid),
        Suite("shoot-laws", _shoot_instances, _check_shoot_laws),
        Suite("classify-soundness", _expr_instances, _check_classify),
        Suite("shadow-algebra", _pair_instances, _check_shadow_algebra),
        Suite("density", _density_instances, _check_density),
        Suite("blueprint", _blueprint_instances, _check_blueprints),
        Suite("pipeline", _pipeline_instances, _check_pipeline),
        Suite("pi-tree", _pi_tree_instances, _check_pi_tree),
    )
}
