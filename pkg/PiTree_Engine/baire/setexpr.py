"""
SetExpr — symbolic subsets of the Baire space with tri-state classification.

Constructors: Empty, Full, Cylinder, Compact, Union, Intersect, Diff and
CylFamilyUnion (a union of cylinders given by a CylinderFamily oracle).

classify(e, x) answers how the cylinder S_x sits against e:
    INSIDE   S_x ⊆ e
    OUTSIDE  S_x ∩ e = ∅
    SPLIT    neither verdict could be proved; S_x may still miss e entirely

Leaves are classified exactly; composite expressions use Kleene's strong
three-valued logic (union = max, intersection = min, difference =
min(a, not b)).  INSIDE and OUTSIDE are always sound.  SPLIT is exact on the
open-minus-compact fragment the pipeline builds.  Elsewhere it only means
"not settled at this node": Intersect((Cylinder((0,)), Cylinder((1,)))) is
SPLIT at ⟨⟩ although it is empty.

Public API:
    Classification, TailPolicy, BairePoint, CylinderFamily, FiniteCylinderFamily,
    Empty, Full, Cylinder, Compact, Union, Intersect, Diff, CylFamilyUnion,
    classify, contains, co_inside_children, support_children,
    is_open, is_closed, expr_to_json, expr_from_json, EMPTY, FULL
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterator

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.errors import (
    InvalidCompactCodeError,
    OracleStratumError,
    SchemaViolationError,
    UndecidableAtDepthError,
)
from PiTree_Engine.trees.seq import Seq, is_prefix, is_proper_prefix


class Classification(IntEnum):
    OUTSIDE = 0
    SPLIT = 1
    INSIDE = 2


OUTSIDE, SPLIT, INSIDE = Classification.OUTSIDE, Classification.SPLIT, Classification.INSIDE


class TailPolicy(str, Enum):
    ZEROS = "zeros"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BairePoint:
    """A point given by a finite prefix; the tail is all zeros or unknown."""

    prefix: Seq
    tail: TailPolicy = TailPolicy.ZEROS

    def expand(self, n: int) -> Seq | None:
        """First n coordinates, or None if they run into an unknown tail."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        if self.tail is TailPolicy.ZEROS:
            return self.prefix + (0,) * (n - len(self.prefix))
        return None


def as_point(point) -> BairePoint:
    return point if isinstance(point, BairePoint) else BairePoint(tuple(point))


# ---------------------------------------------------------------------------
# Cylinder families
# ---------------------------------------------------------------------------

class CylinderFamily(ABC):
    """A decidable family of cylinders, classified node by node."""

    @abstractmethod
    def classify_at(self, x: Seq) -> Classification:
        ...

    @abstractmethod
    def is_member(self, z: Seq) -> bool:
        ...

    @abstractmethod
    def member_below(self, point: BairePoint) -> bool | None:
        """Does some member lie on the point's path (None: unknown tail)."""

    @abstractmethod
    def support_children(self, x: Seq) -> frozenset[int] | None:
        """Finite superset of children of x that are not OUTSIDE, or None if unbounded."""

    @abstractmethod
    def co_inside_children(self, x: Seq) -> frozenset[int] | None:
        """Finite superset of children of x that are not INSIDE, or None if unbounded."""

    @abstractmethod
    def to_json(self) -> dict:
        ...

    def members(self, limit: int) -> Iterator[Seq]:
        return iter(())

    def known_disjoint(self, other: "CylinderFamily") -> bool:
        """True only when the two unions are disjoint by construction."""
        return False


class FiniteCylinderFamily(CylinderFamily):
    """Finitely many cylinders of one common length (the family's stratum)."""

    def __init__(self, seqs):
        self._seqs = frozenset(tuple(s) for s in seqs)
        lengths = {len(s) for s in self._seqs}
        if len(lengths) > 1:
            raise OracleStratumError(f"finite cylinder family mixes strata {sorted(lengths)}")
        self.stratum = lengths.pop() if lengths else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteCylinderFamily) and self._seqs == other._seqs

    def __hash__(self) -> int:
        return hash(self._seqs)

    def __repr__(self) -> str:
        return f"FiniteCylinderFamily({sorted(self._seqs)})"

    def classify_at(self, x: Seq) -> Classification:
        if any(is_prefix(s, x) for s in self._seqs):
            return INSIDE
        if any(is_proper_prefix(x, s) for s in self._seqs):
            return SPLIT
        return OUTSIDE

    def is_member(self, z: Seq) -> bool:
        return tuple(z) in self._seqs

    def member_below(self, point: BairePoint) -> bool | None:
        head = point.expand(self.stratum)
        if head is None:
            return None if any(is_prefix(point.prefix, s) for s in self._seqs) else False
        return head in self._seqs

    def support_children(self, x: Seq) -> frozenset[int] | None:
        if any(is_prefix(s, x) for s in self._seqs):
            return None
        return frozenset(s[len(x)] for s in self._seqs if is_proper_prefix(x, s))

    def co_inside_children(self, x: Seq) -> frozenset[int] | None:
        if any(is_prefix(s, x) for s in self._seqs):
            return frozenset()
        return None

    def members(self, limit: int) -> Iterator[Seq]:
        return iter(sorted(self._seqs)[:limit])

    def to_json(self) -> dict:
        return {"op": "family", "seqs": [list(s) for s in sorted(self._seqs)]}


# ---------------------------------------------------------------------------
# Expression nodes
# ---------------------------------------------------------------------------

class SetExpr:
    """Base of the expression tree."""

    def classify(self, x: Seq) -> Classification:
        raise NotImplementedError

    def __or__(self, other: "SetExpr") -> "SetExpr":
        return Union((self, other))

    def __and__(self, other: "SetExpr") -> "SetExpr":
        return Intersect((self, other))

    def __sub__(self, other: "SetExpr") -> "SetExpr":
        return Diff(self, other)


@dataclass(frozen=True)
class Empty(SetExpr):
    def classify(self, x: Seq) -> Classification:
        return OUTSIDE


@dataclass(frozen=True)
class Full(SetExpr):
    def classify(self, x: Seq) -> Classification:
        return INSIDE


@dataclass(frozen=True)
class Cylinder(SetExpr):
    seq: Seq

    def classify(self, x: Seq) -> Classification:
        if is_prefix(self.seq, x):
            return INSIDE
        if is_proper_prefix(x, self.seq):
            return SPLIT
        return OUTSIDE


@dataclass(frozen=True)
class Compact(SetExpr):
    code: CompactCode

    def classify(self, x: Seq) -> Classification:
        # no cylinder of an infinitely branching space fits in a compact set
        return SPLIT if self.code.in_tree(x) else OUTSIDE


@dataclass(frozen=True)
class Union(SetExpr):
    args: tuple

    def classify(self, x: Seq) -> Classification:
        best = OUTSIDE
        for a in self.args:
            best = max(best, a.classify(x))
            if best is INSIDE:
                break
        return Classification(best)


@dataclass(frozen=True)
class Intersect(SetExpr):
    args: tuple

    def classify(self, x: Seq) -> Classification:
        worst = INSIDE
        for a in self.args:
            worst = min(worst, a.classify(x))
            if worst is OUTSIDE:
                break
        return Classification(worst)


@dataclass(frozen=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr

    def classify(self, x: Seq) -> Classification:
        a = self.left.classify(x)
        if a is OUTSIDE:
            return OUTSIDE
        return Classification(min(a, 2 - self.right.classify(x)))


@dataclass(frozen=True)
class CylFamilyUnion(SetExpr):
    family: CylinderFamily

    def classify(self, x: Seq) -> Classification:
        return self.family.classify_at(tuple(x))


EMPTY = Empty()
FULL = Full()


def classify(e: SetExpr, x: Seq) -> Classification:
    return e.classify(tuple(x))


# ---------------------------------------------------------------------------
# Point membership
# ---------------------------------------------------------------------------

def _member(e: SetExpr, p: BairePoint) -> bool | None:
    if isinstance(e, Empty):
        return False
    if isinstance(e, Full):
        return True
    if isinstance(e, Cylinder):
        head = p.expand(len(e.seq))
        if head is None:
            return None if is_prefix(p.prefix, e.seq) else False
        return head == e.seq
    if isinstance(e, Compact):
        if p.tail is TailPolicy.UNKNOWN:
            return None if e.code.in_tree(p.prefix) else False
        return e.code.in_tree(p.expand(max(len(p.prefix), e.code.table_depth)))
    if isinstance(e, Union):
        vals = [_member(a, p) for a in e.args]
        if any(v is True for v in vals):
            return True
        return None if any(v is None for v in vals) else False
    if isinstance(e, Intersect):
        vals = [_member(a, p) for a in e.args]
        if any(v is False for v in vals):
            return False
        return None if any(v is None for v in vals) else True
    if isinstance(e, Diff):
        a = _member(e.left, p)
        if a is False:
            return False
        b = _member(e.right, p)
        if b is True:
            return False
        return None if (a is None or b is None) else True
    if isinstance(e, CylFamilyUnion):
        return e.family.member_below(p)
    raise TypeError(f"unknown set expression {e!r}")


def contains(e: SetExpr, point) -> bool:
    """
    Exact membership of a point (prefix + tail policy).

    Raises:
        UndecidableAtDepthError: the verdict depends on an unknown tail.
    """
    p = as_point(point)
    verdict = _member(e, p)
    if verdict is None:
        raise UndecidableAtDepthError(f"membership of {p.prefix} needs more coordinates", len(p.prefix))
    return verdict


# ---------------------------------------------------------------------------
# Finite child bounds
# ---------------------------------------------------------------------------

def _union_bounds(parts):
    out: set[int] = set()
    for part in parts:
        if part is None:
            return None
        out |= part
    return frozenset(out)


def _intersect_bounds(parts):
    finite = [p for p in parts if p is not None]
    if not finite:
        return None
    out = set(finite[0])
    for p in finite[1:]:
        out &= p
    return frozenset(out)


def support_children(e: SetExpr, x: Seq) -> frozenset[int] | None:
    """Finite superset of the n with classify(e, x⌢n) != OUTSIDE; None if unbounded."""
    x = tuple(x)
    if isinstance(e, Empty):
        return frozenset()
    if isinstance(e, Full):
        return None
    if isinstance(e, Cylinder):
        if is_prefix(e.seq, x):
            return None
        if is_proper_prefix(x, e.seq):
            return frozenset({e.seq[len(x)]})
        return frozenset()
    if isinstance(e, Compact):
        return e.code.allowed_at(x) if e.code.in_tree(x) else frozenset()
    if isinstance(e, Union):
        return _union_bounds(support_children(a, x) for a in e.args)
    if isinstance(e, Intersect):
        return _intersect_bounds([support_children(a, x) for a in e.args])
    if isinstance(e, Diff):
        return support_children(e.left, x)
    if isinstance(e, CylFamilyUnion):
        return e.family.support_children(x)
    raise TypeError(f"unknown set expression {e!r}")


def co_inside_children(e: SetExpr, x: Seq) -> frozenset[int] | None:
    """Finite superset of the n with classify(e, x⌢n) != INSIDE; None if unbounded."""
    x = tuple(x)
    if isinstance(e, Empty):
        return None
    if isinstance(e, Full):
        return frozenset()
    if isinstance(e, Cylinder):
        return frozenset() if is_prefix(e.seq, x) else None
    if isinstance(e, Compact):
        return None
    if isinstance(e, Union):
        return _intersect_bounds([co_inside_children(a, x) for a in e.args])
    if isinstance(e, Intersect):
        return _union_bounds(co_inside_children(a, x) for a in e.args)
    if isinstance(e, Diff):
        return _union_bounds([co_inside_children(e.left, x), support_children(e.right, x)])
    if isinstance(e, CylFamilyUnion):
        return e.family.co_inside_children(x)
    raise TypeError(f"unknown set expression {e!r}")


# ---------------------------------------------------------------------------
# Structural topology
# ---------------------------------------------------------------------------

def is_open(e: SetExpr) -> bool:
    """Provably open from the expression structure."""
    if isinstance(e, (Empty, Full, Cylinder, CylFamilyUnion)):
        return True
    if isinstance(e, Compact):
        return False
    if isinstance(e, (Union, Intersect)):
        return all(is_open(a) for a in e.args)
    if isinstance(e, Diff):
        return is_open(e.left) and is_closed(e.right)
    return False


def is_closed(e: SetExpr) -> bool:
    """Provably closed from the expression structure."""
    if isinstance(e, (Empty, Full, Cylinder, Compact)):
        return True
    if isinstance(e, CylFamilyUnion):
        return isinstance(e.family, FiniteCylinderFamily)
    if isinstance(e, (Union, Intersect)):
        return all(is_closed(a) for a in e.args)
    if isinstance(e, Diff):
        return is_closed(e.left) and is_open(e.right)
    return False


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def expr_to_json(e: SetExpr) -> dict:
    if isinstance(e, Empty):
        return {"op": "empty"}
    if isinstance(e, Full):
        return {"op": "full"}
    if isinstance(e, Cylinder):
        return {"op": "cyl", "seq": list(e.seq)}
    if isinstance(e, Compact):
        return e.code.to_json()
    if isinstance(e, Union):
        return {"op": "union", "args": [expr_to_json(a) for a in e.args]}
    if isinstance(e, Intersect):
        return {"op": "inter", "args": [expr_to_json(a) for a in e.args]}
    if isinstance(e, Diff):
        return {"op": "diff", "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, CylFamilyUnion):
        return e.family.to_json()
    raise TypeError(f"unknown set expression {e!r}")


def expr_from_json(data, location: str = "expr") -> SetExpr:
    if not isinstance(data, dict) or "op" not in data:
        raise SchemaViolationError("set expression must be an object with 'op'", location)
    op = data["op"]
    if op == "empty":
        return EMPTY
    if op == "full":
        return FULL
    if op == "cyl":
        seq = data.get("seq")
        if not isinstance(seq, list) or not all(isinstance(v, int) and v >= 0 for v in seq):
            raise SchemaViolationError("'seq' must be a list of naturals", location)
        return Cylinder(tuple(seq))
    if op == "compact":
        try:
            return Compact(CompactCode.from_json(data, location))
        except InvalidCompactCodeError as exc:
            raise SchemaViolationError(str(exc), location)
    if op == "family":
        seqs = data.get("seqs")
        if not isinstance(seqs, list):
            raise SchemaViolationError("'seqs' must be a list", location)
        return CylFamilyUnion(FiniteCylinderFamily(tuple(s) for s in seqs))
    if op in ("union", "inter", "diff"):
        args = data.get("args")
        if not isinstance(args, list) or (op == "diff" and len(args) != 2):
            raise SchemaViolationError(f"'{op}' needs an 'args' list", location)
        parsed = tuple(expr_from_json(a, f"{location}.args[{i}]") for i, a in enumerate(args))
        if op == "union":
            return Union(parsed)
        if op == "inter":
            return Intersect(parsed)
        return Diff(*parsed)
    raise SchemaViolationError(f"unknown op {op!r}", location)
