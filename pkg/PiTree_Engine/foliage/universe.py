"""
Leaf universes — where the leaves of a foliage tree live.

LeafUniverse is the abstract contract every foliage operation talks to.
FiniteUniverse is the exhaustive instantiation: leaves are frozensets of
points drawn from one finite point set.  The symbolic Baire instantiation
lives in PiTree_Engine.baire.universe.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import reduce
from typing import Iterable


class LeafUniverse(ABC):
    """Boolean operations and tests on leaf values."""

    name: str = "abstract"

    @abstractmethod
    def empty(self):
        ...

    @abstractmethod
    def full(self):
        ...

    @abstractmethod
    def is_empty(self, a) -> bool:
        ...

    @abstractmethod
    def intersect(self, a, b):
        ...

    @abstractmethod
    def union(self, a, b):
        ...

    @abstractmethod
    def difference(self, a, b):
        ...

    @abstractmethod
    def is_subset(self, a, b) -> bool:
        ...

    @abstractmethod
    def is_disjoint(self, a, b) -> bool:
        ...

    @abstractmethod
    def is_singleton(self, a) -> bool:
        ...

    @abstractmethod
    def contains(self, a, point) -> bool:
        ...

    def is_open(self, a) -> bool:
        return True

    def equal(self, a, b) -> bool:
        return self.is_subset(a, b) and self.is_subset(b, a)

    def union_all(self, items: Iterable):
        return reduce(self.union, items, self.empty())

    def intersect_all(self, items: Iterable):
        items = list(items)
        if not items:
            return self.full()
        return reduce(self.intersect, items[1:], items[0])

    # -- optional point / neighborhood base, used by grows_into --------------

    def points(self, a) -> list:
        raise NotImplementedError(f"{self.name} universe has no point enumerator")

    def base_neighborhoods(self, point, a) -> list[tuple]:
        raise NotImplementedError(f"{self.name} universe has no neighborhood base")

    def describe(self, a):
        """JSON-able rendering of a leaf."""
        return repr(a)


class FiniteUniverse(LeafUniverse):
    """Leaves are frozensets over a fixed finite point set; every set is open."""

    name = "finite"

    def __init__(self, points: Iterable):
        self._points = frozenset(points)

    @property
    def point_set(self) -> frozenset:
        return self._points

    def empty(self) -> frozenset:
        return frozenset()

    def full(self) -> frozenset:
        return self._points

    def is_empty(self, a) -> bool:
        return not a

    def intersect(self, a, b) -> frozenset:
        return frozenset(a) & frozenset(b)

    def union(self, a, b) -> frozenset:
        return frozenset(a) | frozenset(b)

    def difference(self, a, b) -> frozenset:
        return frozenset(a) - frozenset(b)

    def is_subset(self, a, b) -> bool:
        return frozenset(a) <= frozenset(b)

    def is_disjoint(self, a, b) -> bool:
        return not (frozenset(a) & frozenset(b))

    def is_singleton(self, a) -> bool:
        return len(a) == 1

    def contains(self, a, point) -> bool:
        return point in a

    def points(self, a) -> list:
        return sorted(a, key=repr)

    def base_neighborhoods(self, point, a) -> list[tuple]:
        # discrete topology: {point} is the smallest neighborhood
        return [(point, frozenset({point}) & frozenset(a))]

    def describe(self, a):
        return sorted(a, key=repr)
