"""
Shadows — classification fingerprints of set expressions on a finite stratum.

The stratum at (depth, width) is {y : len(y) = depth, all values < width},
stored as an int8 numpy array in lexicographic order (the mixed-radix index
of y).  Two expressions are considered equal at (depth, width) iff their
shadows are equal; this is the truncated set equality used by every
invariant check of the engine.

Usage:
    sh = depth_shadow(Diff(FULL, Compact(CompactCode.point(()))), 2, 2)
    sh.split    # frozenset({(0, 0)})

Public API:
    Shadow, depth_shadow, stratum, pi_dense_at, is_dense_at,
    pi_density_guarantee, confinement_depth
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import product

import numpy as np

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.setexpr import INSIDE, OUTSIDE, SPLIT, Classification, SetExpr, classify
from PiTree_Engine.errors import PreconditionError
from PiTree_Engine.trees.seq import Seq, common_prefix

logger = logging.getLogger(__name__)


def stratum(depth: int, width: int, below: Seq = ()) -> list[Seq]:
    """Stratum nodes extending ``below``, in lexicographic order."""
    below = tuple(below)
    if len(below) > depth:
        return []
    return [below + tail for tail in product(range(width), repeat=depth - len(below))]


class Shadow:
    """Codes of one expression on the stratum at (depth, width)."""

    __slots__ = ("depth", "width", "codes")

    def __init__(self, depth: int, width: int, codes: np.ndarray):
        self.depth = depth
        self.width = width
        self.codes = codes
        self.codes.setflags(write=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Shadow)
            and (self.depth, self.width) == (other.depth, other.width)
            and bool(np.array_equal(self.codes, other.codes))
        )

    def __hash__(self) -> int:
        return hash((self.depth, self.width, self.codes.tobytes()))

    def __repr__(self) -> str:
        return f"Shadow(depth={self.depth}, width={self.width}, inside={len(self.inside)}, split={len(self.split)})"

    def _nodes_with(self, code: int) -> frozenset[Seq]:
        idx = np.flatnonzero(self.codes == int(code))
        return frozenset(self.node_at(int(i)) for i in idx)

    def node_at(self, index: int) -> Seq:
        digits = []
        for _ in range(self.depth):
            index, r = divmod(index, self.width)
            digits.append(r)
        return tuple(reversed(digits))

    def index_of(self, y: Seq) -> int:
        idx = 0
        for v in y:
            idx = idx * self.width + v
        return idx

    def code_at(self, y: Seq) -> Classification:
        return Classification(int(self.codes[self.index_of(y)]))

    @property
    def inside(self) -> frozenset[Seq]:
        return self._nodes_with(INSIDE)

    @property
    def split(self) -> frozenset[Seq]:
        return self._nodes_with(SPLIT)

    @property
    def support(self) -> frozenset[Seq]:
        """Stratum nodes not classified Outside."""
        return frozenset(self.node_at(int(i)) for i in np.flatnonzero(self.codes != int(OUTSIDE)))

    def is_empty(self) -> bool:
        return not bool(np.any(self.codes != int(OUTSIDE)))

    def is_subset(self, other: "Shadow") -> bool:
        return bool(np.all(self.codes <= other.codes))

    # pointwise Kleene operations

    def join(self, other: "Shadow") -> "Shadow":
        return Shadow(self.depth, self.width, np.maximum(self.codes, other.codes))

    def meet(self, other: "Shadow") -> "Shadow":
        return Shadow(self.depth, self.width, np.minimum(self.codes, other.codes))

    def minus(self, other: "Shadow") -> "Shadow":
        return Shadow(self.depth, self.width, np.minimum(self.codes, int(INSIDE) - other.codes).astype(np.int8))

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "width": self.width,
            "inside": [list(y) for y in sorted(self.inside)],
            "split": [list(y) for y in sorted(self.split)],
        }


@lru_cache(maxsize=4096)
def depth_shadow(e: SetExpr, depth: int, width: int) -> Shadow:
    """
    Classify every stratum node of ``e``.

    Walks the box top-down; a node settled as Inside or Outside fills its
    whole block, since both verdicts persist on extensions.
    """
    codes = np.zeros(width ** depth, dtype=np.int8)

    def walk(x: Seq, offset: int) -> None:
        c = classify(e, x)
        block = width ** (depth - len(x))
        if c is not SPLIT or len(x) == depth:
            codes[offset:offset + block] = int(c)
            return
        step = block // width
        for n in range(width):
            walk(x + (n,), offset + n * step)

    walk((), 0)
    return Shadow(depth, width, codes)


# ---------------------------------------------------------------------------
# Density
# ---------------------------------------------------------------------------

def _box_below(x: Seq, depth: int, width: int):
    x = tuple(x)
    yield x
    for k in range(1, max(depth - len(x), 0) + 1):
        for tail in product(range(width), repeat=k):
            yield x + tail


def pi_dense_at(e: SetExpr, x: Seq, depth: int, width: int, threshold: int) -> bool:
    """
    Truncated π-density: every y ⊇ x with len(y) ≤ depth (box values) has at
    least ``threshold`` sons y⌢n, n < width, classified Inside.

    Raises:
        PreconditionError: threshold exceeds width.
    """
    if threshold > width:
        raise PreconditionError(f"threshold {threshold} exceeds width {width}")
    for y in _box_below(x, depth, width):
        good = sum(1 for n in range(width) if classify(e, y + (n,)) is INSIDE)
        if good < threshold:
            logger.debug(f"pi-density fails at {y}: {good} inside sons < {threshold}")
            return False
    return True


def is_dense_at(e: SetExpr, x: Seq, depth: int, width: int) -> bool:
    """Truncated density: no stratum node below x is classified Outside."""
    x = tuple(x)
    level = max(depth, len(x))
    return all(classify(e, y) is not OUTSIDE for y in stratum(level, width, x))


def pi_density_guarantee(code: CompactCode, threshold: int) -> int:
    """Width from which the complement of ``code`` is π-dense with ``threshold``."""
    return code.max_branching + threshold


def confinement_depth(e: SetExpr, depth: int, width: int) -> int | None:
    """Length of the longest cylinder confining e on the stratum; None if e is empty there."""
    support = depth_shadow(e, depth, width).support
    if not support:
        return None
    return len(common_prefix(support))
