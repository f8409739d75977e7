"""
The stage recursion that removes one closed set per stage.

Stage n works with an open π-dense U_n:
    M_{-1} = {⟨⟩}
    Z_n    = {x ∈ M_{n-1} : classify(U_n, x) = Split}
    ψ_n    = {blueprint(x, U_n ∩ S_x) : x ∈ Z_n}
    M_n    = (M_{n-1} \\ Z_n) ∪ ⋃ MAX of ψ_n

M_n and Z_n are infinite in general, so the state keeps only the sequence
U_0..U_n and answers membership questions lazily; every box query is cut
at (depth, width).

Usage:
    result = pipeline_run([CompactCode.point(())], stages=1, depth=4, width=4)
    result.state.in_m(0, (1,))     # True
    result.view                    # LazyHybridView over the standard tree
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import (
    EMPTY,
    FULL,
    INSIDE,
    OUTSIDE,
    SPLIT,
    BairePoint,
    Classification,
    Compact,
    Cylinder,
    CylinderFamily,
    Diff,
    Full,
    Intersect,
    SetExpr,
    classify,
    is_open,
)
from PiTree_Engine.baire.shadow import pi_dense_at, pi_density_guarantee
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.config import DEFAULT_DEPTH, DEFAULT_THRESHOLD, DEFAULT_WIDTH
from PiTree_Engine.errors import (
    DensityViolationError,
    InvariantFailureError,
    PreconditionError,
)
from PiTree_Engine.pipeline.blueprint import GraftBlueprint, blueprint_build
from PiTree_Engine.trees.seq import Seq, fmt_seq

logger = logging.getLogger(__name__)


def box_seqs(depth: int, width: int) -> Iterator[Seq]:
    """Sequences of length ≤ depth with values < width, shortest first."""
    for k in range(depth + 1):
        yield from product(range(width), repeat=k)


def complement_of(U: SetExpr) -> SetExpr:
    if isinstance(U, Diff) and isinstance(U.left, Full):
        return U.right
    return Diff(FULL, U)


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineState:
    """
    The recursion after stages 0..stage.  ``opens`` holds U_0..U_stage; all
    other quantities (M_n, Z_n, ψ_n, the loss) are derived on demand and
    memoized in ``memo``, which successive states share.
    """

    opens: tuple = ()
    universe: BaireUniverse = field(default_factory=lambda: BaireUniverse(DEFAULT_DEPTH, DEFAULT_WIDTH), compare=False)
    memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def stage(self) -> int:
        return len(self.opens) - 1

    def extended(self, U_next: SetExpr) -> "PipelineState":
        return PipelineState(self.opens + (U_next,), self.universe, self.memo)

    # -- recursion -----------------------------------------------------------

    def in_m(self, n: int, y: Seq) -> bool:
        """y ∈ M_n."""
        y = tuple(y)
        if n < 0:
            return y == ()
        key = ("m", n, y)
        if key not in self.memo:
            if self.in_m(n - 1, y):
                self.memo[key] = not self.is_root(n, y)
            else:
                self.memo[key] = self._is_new_max(n, y)
        return self.memo[key]

    def _is_new_max(self, n: int, y: Seq) -> bool:
        # M_{n-1} is an antichain: at most one proper prefix of y lies in it
        for k in range(len(y) - 1, -1, -1):
            r = y[:k]
            if self.in_m(n - 1, r):
                return self.is_root(n, r) and self.blueprint(n, r).is_max(y)
        return False

    def is_root(self, n: int, y: Seq) -> bool:
        """
        y ∈ Z_n.

        Raises:
            InvariantFailureError: a node of M_{n-1} misses U_n entirely.
        """
        y = tuple(y)
        if not self.in_m(n - 1, y):
            return False
        verdict = classify(self.opens[n], y)
        if verdict is OUTSIDE:
            raise InvariantFailureError(["frontier-covers"], {"stage": n, "node": list(y)})
        return verdict is SPLIT

    def root_stage(self, y: Seq) -> int | None:
        for n in range(self.stage + 1):
            if self.is_root(n, y):
                return n
        return None

    def blueprint(self, n: int, v: Seq) -> GraftBlueprint:
        v = tuple(v)
        key = ("bp", n, v)
        if key not in self.memo:
            O = Intersect((Cylinder(v), self.opens[n]))
            self.memo[key] = blueprint_build(v, O, stage=n, universe=self.universe)
        return self.memo[key]

    def cover(self, n: int, y: Seq) -> Classification:
        """How S_y sits against ⋃_{x ∈ M_n} S_x."""
        y = tuple(y)
        if n < 0:
            return INSIDE
        for k in range(len(y), -1, -1):
            u = y[:k]
            if self.in_m(n - 1, u):
                if not self.is_root(n, u) or self.blueprint(n, u).in_omega(y):
                    return INSIDE
                return SPLIT
        return SPLIT if self.cover(n - 1, y) is SPLIT else OUTSIDE

    # -- box views -------------------------------------------------------------

    def frontier(self, n: int, depth: int, width: int) -> list[Seq]:
        """M_n restricted to the box."""
        return [y for y in box_seqs(depth, width) if self.in_m(n, y)]

    def roots(self, n: int, depth: int, width: int) -> list[Seq]:
        """Z_n restricted to the box."""
        return [y for y in box_seqs(depth, width) if self.is_root(n, y)]

    def psi(self, n: int, depth: int, width: int) -> list[GraftBlueprint]:
        return [self.blueprint(n, r) for r in self.roots(n, depth, width)]

    def family(self, depth: int, width: int) -> list[GraftBlueprint]:
        """All blueprints of stages 0..stage whose roots lie in the box."""
        return [bp for n in range(self.stage + 1) for bp in self.psi(n, depth, width)]

    @property
    def loss(self) -> SetExpr:
        """Closed form ⋃ (complement of U_i)."""
        return self.universe.union_all(complement_of(U) for U in self.opens) if self.opens else EMPTY

    def survivors(self, n: int | None = None) -> SetExpr:
        """⋂_{i ≤ n} U_i."""
        n = self.stage if n is None else n
        return self.universe.intersect_all(list(self.opens[:n + 1]))


class FrontierFamily(CylinderFamily):
    """⋃_{x ∈ M_n} S_x as a cylinder family, classified through the recursion."""

    def __init__(self, state: PipelineState, n: int):
        self.state = state
        self.n = n

    def __eq__(self, other) -> bool:
        return isinstance(other, FrontierFamily) and (self.state.opens, self.n) == (other.state.opens, other.n)

    def __hash__(self) -> int:
        return hash(("frontier", self.state.opens, self.n))

    def classify_at(self, x: Seq) -> Classification:
        return self.state.cover(self.n, x)

    def is_member(self, z: Seq) -> bool:
        return self.state.in_m(self.n, z)

    def member_below(self, point: BairePoint) -> bool | None:
        prefix = point.prefix
        if any(self.state.in_m(self.n, prefix[:k]) for k in range(len(prefix) + 1)):
            return True
        return None

    def support_children(self, x: Seq) -> frozenset[int] | None:
        return None

    def co_inside_children(self, x: Seq) -> frozenset[int] | None:
        return frozenset() if self.classify_at(x) is INSIDE else None

    def to_json(self) -> dict:
        return {"op": "frontier", "stage": self.n}


# ---------------------------------------------------------------------------
# Steps
# ---------------------------------------------------------------------------

def pipeline_step(
    state: PipelineState,
    U_next: SetExpr,
    depth: int = DEFAULT_DEPTH,
    width: int = DEFAULT_WIDTH,
    threshold: int = DEFAULT_THRESHOLD,
    verify: bool = True,
) -> PipelineState:
    """
    Run one stage with the open set U_next.

    Raises:
        PreconditionError: U_next is not provably open.
        DensityViolationError: U_next is not π-dense at (depth, width, threshold).
        InvariantFailureError: a stage check fails after the step.
    """
    if not is_open(U_next):
        raise PreconditionError("the open set of a stage must be provably open")
    if not pi_dense_at(U_next, (), depth, width, threshold):
        raise DensityViolationError(
            f"stage {state.stage + 1}: open set is not π-dense at depth={depth} width={width} threshold={threshold}")
    new = state.extended(U_next)
    roots = new.roots(new.stage, depth, width)
    logger.info(f"stage {new.stage}: {len(roots)} roots in the box {[fmt_seq(r) for r in roots[:8]]}")
    if verify:
        from PiTree_Engine.pipeline.invariants import failed_checks, pipeline_checks

        results = pipeline_checks(new, depth, width)
        failed = failed_checks(results)
        if failed:
            raise InvariantFailureError(failed, {"stage": new.stage})
    return new


@dataclass(frozen=True)
class PipelineResult:
    state: PipelineState
    loss: SetExpr
    view: object

    @property
    def family(self) -> list[GraftBlueprint]:
        u = self.state.universe
        return self.state.family(u.depth, u.width)


def pipeline_run(
    compacts: Sequence[CompactCode],
    stages: int | None = None,
    depth: int = DEFAULT_DEPTH,
    width: int = DEFAULT_WIDTH,
    threshold: int = DEFAULT_THRESHOLD,
    verify: bool = True,
) -> PipelineResult:
    """
    Remove compacts[0..stages-1], one per stage.

    Raises:
        PreconditionError: more stages than compact codes.
        plus everything pipeline_step raises.
    """
    from PiTree_Engine.pipeline.lazy_view import LazyHybridView

    stages = len(compacts) if stages is None else stages
    if stages > len(compacts):
        raise PreconditionError(f"{stages} stages requested but only {len(compacts)} compact codes given")
    state = PipelineState(universe=BaireUniverse(depth, width))
    for n in range(stages):
        code = compacts[n]
        guarantee = pi_density_guarantee(code, threshold)
        if width < guarantee:
            logger.warning(f"stage {n}: width {width} is below the density guarantee {guarantee}")
        state = pipeline_step(state, Diff(FULL, Compact(code)), depth, width, threshold, verify)
    logger.info(f"pipeline finished after {stages} stages")
    return PipelineResult(state, state.loss, LazyHybridView(state))
