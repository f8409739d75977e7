"""
Shoot certificates.

A shoot of x is a union of leaves over a cofinite set of its sons.  The
refinement test enumerates the first sons of x in A, drops a finite set of
exceptions, and asks every remaining son to be a son of y in B with a leaf
inside its B-leaf.  A True answer certifies that the shoots of x refine the
shoots of y.

Two constructions produce such certificates:
    preserving_node   blueprint node over a Δ node y holding a point of O
    certify_shoot     node of the lazy hybrid over any standard-tree node y,
                      either the support node itself ("support" case) or the
                      blueprint recipe ("blueprint" case)

Usage:
    cert = certify_shoot(result.view, (1, 2), ())
    cert.holds, cert.case         # True, "blueprint"
    shoots_into_check(result.view, shoot_samples(result.view, 50))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Iterable, Sequence

import numpy as np

from PiTree_Engine.baire.setexpr import INSIDE, Cylinder, SetExpr, as_point, classify, contains
from PiTree_Engine.baire.standard import StdTreeView
from PiTree_Engine.baire.universe import BaireUniverse
from PiTree_Engine.config import DEFAULT_SAMPLES, DEFAULT_SEED
from PiTree_Engine.errors import (
    InvalidHybridNodeError,
    NodeNotFoundError,
    NoWitnessError,
    PreconditionError,
    SampleOutsideError,
    UndecidableAtDepthError,
)
from PiTree_Engine.grafting.hybrid import Graft, Supp
from PiTree_Engine.pipeline.blueprint import GraftBlueprint, ImplantNode
from PiTree_Engine.trees.seq import Seq, fmt_seq

logger = logging.getLogger(__name__)

MAX_SCAN = 256


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------

def _first_sons(view, x, count_: int) -> list:
    return list(islice(view.sons(x), count_))


def shoots_refinement(
    A,
    x,
    B,
    y,
    exceptions: Iterable = (),
    width: int | None = None,
    node_map: Callable | None = None,
) -> bool:
    """
    True iff every enumerated son s of x in A outside ``exceptions`` is a son
    of y in B with leaf_A(s) ⊆ leaf_B(s).  ``node_map`` translates A-nodes to
    B-nodes; ``width`` bounds the enumeration (default: B's universe width).

    Raises:
        PreconditionError: x has no more sons than exceptions.
        UndecidableAtDepthError: a leaf comparison is not settled.
    """
    exceptions = frozenset(exceptions)
    width = width or getattr(B.universe, "width", None)
    sons = list(A.sons(x)) if width is None else _first_sons(A, x, width + len(exceptions))
    if len(sons) <= len(exceptions):
        raise PreconditionError(f"{x!r} has {len(sons)} sons, not more than its {len(exceptions)} exceptions")
    U = B.universe
    for s in sons:
        if s in exceptions:
            continue
        t = node_map(s) if node_map else s
        try:
            if B.parent_of(t) != y:
                logger.debug(f"shoot refinement: {s!r} is not a son of {y!r}")
                return False
            if not U.is_subset(A.leaf(s), B.leaf(t)):
                logger.debug(f"shoot refinement: leaf of {s!r} is not inside that of {t!r}")
                return False
        except (NodeNotFoundError, InvalidHybridNodeError):
            return False
    return True


@dataclass(frozen=True)
class ShootCertificate:
    """
    Witness that scope_node carries the point and that its shoots refine the
    shoots of ``witness`` (the host node), exceptions aside.
    """

    point: Seq
    scope_node: object
    witness: Seq
    case: str
    exceptions: tuple = field(default_factory=tuple)
    holds: bool = False

    def to_dict(self) -> dict:
        return {
            "point": list(self.point),
            "scope_node": repr(self.scope_node),
            "witness": list(self.witness),
            "case": self.case,
            "exceptions": [repr(e) for e in self.exceptions],
            "holds": self.holds,
        }


# ---------------------------------------------------------------------------
# Blueprints preserve shoots
# ---------------------------------------------------------------------------

def _first_max_prefix(bp: GraftBlueprint, point, start: int) -> Seq:
    p = as_point(point)
    for k in range(start, len(p.prefix) + MAX_SCAN):
        head = p.expand(k)
        if head is None:
            raise UndecidableAtDepthError(f"no maximal node within the known prefix {fmt_seq(p.prefix)}", k)
        if bp.is_max(head):
            return head
    raise NoWitnessError(f"no maximal node of {bp!r} on {fmt_seq(p.prefix)}", sample=list(p.prefix))


def preserving_node(bp: GraftBlueprint, point, y: Seq) -> tuple[ImplantNode, tuple]:
    """
    The implant node Imp(d, l) whose leaf holds ``point`` and whose sons,
    except Imp(d, l-1), are sons of y in the standard tree.

    Raises:
        PreconditionError: y is not in Δ.
        SampleOutsideError: the point is not in O ∩ S_y.
        NoWitnessError: no maximal node within the scan limit.
    """
    y = tuple(y)
    if not bp.in_delta(y):
        raise PreconditionError(f"{fmt_seq(y)} is not in Δ of {bp!r}")
    p = as_point(point)
    if p.expand(len(y)) != y or not contains(bp.O, p):
        raise SampleOutsideError(f"{fmt_seq(p.prefix)} is not a point of O inside S_{fmt_seq(y)}")
    z = _first_max_prefix(bp, p, len(y) + 1)
    d = bp.partition_assign(z)
    level = len(d) - len(y)
    node = bp.implant(d, level)
    exceptions = (bp.implant(d, level - 1),) if level >= 1 else ()
    return node, exceptions


def preserving_certificate(bp: GraftBlueprint, point, y: Seq, width: int | None = None) -> ShootCertificate:
    node, exceptions = preserving_node(bp, point, y)
    std = StdTreeView(bp.universe.depth, bp.universe.width)
    holds = contains(bp.leaf(node), point) and shoots_refinement(bp, node, std, tuple(y), exceptions, width)
    return ShootCertificate(as_point(point).prefix, node, tuple(y), "blueprint", exceptions, holds)


def preserves_shoots_check(bp: GraftBlueprint, samples: Sequence[tuple], width: int | None = None) -> bool:
    """Conjunction of preserving certificates over (point, y) samples."""
    for point, y in samples:
        cert = preserving_certificate(bp, point, y, width)
        if not cert.holds:
            logger.info(f"shoot preservation fails for {fmt_seq(cert.point)} over {fmt_seq(cert.witness)}")
            return False
    return True


def blueprint_samples(bp: GraftBlueprint, depth: int, width: int) -> list[tuple[Seq, Seq]]:
    """(point, y) pairs with y ∈ Δ in the box and point = y⌢n (zero tail) in O."""
    out = []
    layer = [bp.v]
    while layer:
        nxt = []
        for y in layer:
            for n in range(width):
                c = y + (n,)
                if contains(bp.O, c):
                    out.append((c, y))
                if len(c) <= depth and bp.in_delta(c):
                    nxt.append(c)
        layer = nxt
    return out


# ---------------------------------------------------------------------------
# The lazy hybrid shoots into the standard tree
# ---------------------------------------------------------------------------

def _hybrid_to_seq(h):
    return h.node if isinstance(h, Supp) else h


def certify_shoot(view, point, y: Seq, width: int | None = None) -> ShootCertificate:
    """
    A node of scope_H(point) whose shoots refine those of y in S.

    Raises:
        SampleOutsideError: the point lies in the loss or outside S_y.
        plus everything preserving_node raises.
    """
    p = as_point(point)
    y = tuple(y)
    if contains(view.loss, p):
        raise SampleOutsideError(f"{fmt_seq(p.prefix)} lies in the loss")
    if p.expand(len(y)) != y:
        raise SampleOutsideError(f"{fmt_seq(p.prefix)} is not in S_{fmt_seq(y)}")
    std = StdTreeView(view.depth, view.width)

    bp = view.explant_owner(y) or view.root_blueprint(y)
    if bp is None:
        x = Supp(y)
        holds = contains(view.leaf(x), p) and shoots_refinement(view, x, std, y, (), width, _hybrid_to_seq)
        return ShootCertificate(p.prefix, x, y, "support", (), holds)

    imp, exc = preserving_node(bp, p, y)
    x = Graft(bp.stage, imp)
    exceptions = tuple(Graft(bp.stage, e) for e in exc)
    holds = contains(view.leaf(x), p) and shoots_refinement(view, x, std, y, exceptions, width, _hybrid_to_seq)
    return ShootCertificate(p.prefix, x, y, "blueprint", exceptions, holds)


def shoots_into_check(view, samples: Sequence[tuple], width: int | None = None) -> bool:
    for point, y in samples:
        cert = certify_shoot(view, point, y, width)
        if not cert.holds:
            logger.info(f"shoots-into fails: {cert.to_dict()}")
            return False
    return True


def _nonempty_near(universe: BaireUniverse, e: SetExpr, z: Seq) -> bool:
    """Some cylinder a few levels below z (box values) is inside e."""
    layer = [tuple(z)]
    for _ in range(universe.lookahead_depth + 2):
        if any(classify(e, w) is INSIDE for w in layer):
            return True
        layer = [w + (n,) for w in layer for n in range(universe.width)]
    return False


def grows_into_subspace_check(view, samples: Sequence[tuple], width: int | None = None) -> bool:
    """
    For every sample (p, y) some node of scope_H(p) has a shoot member with a
    nonempty leaf inside S_y (leaves of the hybrid already avoid the loss).

    Raises:
        UndecidableAtDepthError: no enumerated son settles a sample.
    """
    width = width or view.width
    for point, y in samples:
        cert = certify_shoot(view, point, y, width)
        if not cert.holds:
            return False
        target = Cylinder(tuple(y))
        found = False
        for s in _first_sons(view, cert.scope_node, width + len(cert.exceptions)):
            if s in cert.exceptions:
                continue
            leaf = view.leaf(s)
            z = _hybrid_to_seq(s)
            if isinstance(z, tuple) and _nonempty_near(view.universe, leaf, z) \
                    and view.universe.is_subset(leaf, target):
                found = True
                break
        if not found:
            raise UndecidableAtDepthError(
                f"no enumerated shoot member inside S_{fmt_seq(tuple(y))} for {fmt_seq(cert.point)}", view.depth)
    return True


def shoot_samples(view, count_: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> list[tuple[Seq, Seq]]:
    """
    Random (point, y) pairs inside the box: points avoid the loss and y is a
    prefix of the point.  Every other sample takes y = ⟨⟩.
    """
    rng = np.random.default_rng(seed)
    out: list[tuple[Seq, Seq]] = []
    tries = 0
    while len(out) < count_ and tries < 50 * count_:
        tries += 1
        length = int(rng.integers(1, view.depth + 1))
        p = tuple(int(v) for v in rng.integers(0, view.width, size=length))
        if contains(view.loss, p):
            continue
        k = 0 if len(out) % 2 == 0 else int(rng.integers(1, length + 1))
        out.append((p, p[:k]))
    return out
