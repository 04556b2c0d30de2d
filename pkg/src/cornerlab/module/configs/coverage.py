"""
Incremental cover bookkeeping for searches.

For a growing or shrinking set S the tracker keeps, for every point t of the
domain, the number of configurations that contain t and whose other points
all lie in S. A point outside S is covered when its count is positive
(adding it would complete a configuration); S is configuration-free exactly
when every member has count zero.

Corner moves cost O(|S|) completion lookups; square moves enumerate the
three squares through the moved point and each member.
"""

from typing import FrozenSet, List, Set

import numpy as np

from cornerlab.module.grid_core import Domain, GridPoint, PointSet
from .predicates import corner_completions


def squares_through(s: GridPoint, a: GridPoint, domain: Domain) -> List[FrozenSet[GridPoint]]:
    """
    Every square having both s and a as vertices.

    Two squares have s-a as a side and at most one has it as a diagonal
    (the diagonal one needs exact halving on the integer grid).
    """
    result = []
    side = domain.sub(a, s)
    side_perp = domain.rot90(side)
    for sign in (1, -1):
        step = domain.scale(sign, side_perp)
        c = domain.add(a, step)
        d = domain.add(s, step)
        if domain.contains(c) and domain.contains(d):
            result.append(frozenset((s, a, c, d)))
    # s and a opposite: the centre is (s + a) / 2, the half-diagonal rotates
    centre2 = GridPoint(s[0] + a[0], s[1] + a[1])
    half_diag2 = domain.rot90(side)
    u = domain.half(GridPoint(centre2[0] + half_diag2[0], centre2[1] + half_diag2[1]))
    v = domain.half(GridPoint(centre2[0] - half_diag2[0], centre2[1] - half_diag2[1]))
    if u is not None and v is not None:
        u, v = domain.reduce(u), domain.reduce(v)
        if domain.contains(u) and domain.contains(v):
            result.append(frozenset((s, a, u, v)))
    return result


class CoverageTracker:
    """
    Cover counts for a mutable point set.

    Args:
        domain: Universe
        squares: Track squares instead of corners
        axis_parallel: Track axis-parallel corners instead of tilted ones
    """

    def __init__(self, domain: Domain, squares: bool = False, axis_parallel: bool = False):
        self.domain = domain
        self.squares = squares
        self.axis_parallel = axis_parallel
        self.members = PointSet.empty(domain)
        self.cover = np.zeros(domain.num_points, dtype=np.int64)
        self._order: List[GridPoint] = []

    @classmethod
    def from_points(cls, points: PointSet, squares: bool = False, axis_parallel: bool = False) -> "CoverageTracker":
        tracker = cls(points.domain, squares, axis_parallel)
        for q in points:
            tracker.add(q)
        return tracker

    def __len__(self) -> int:
        return self.members.cardinality

    @property
    def bits(self) -> np.ndarray:
        return self.members.bits

    def _apply(self, s: GridPoint, delta: int) -> None:
        domain = self.domain
        others = [a for a in self._order if a != s]
        if not self.squares:
            for a in others:
                for r in corner_completions(s, a, domain, self.axis_parallel):
                    self.cover[domain.index(r)] += delta
            return

        seen: Set[FrozenSet[GridPoint]] = set()
        for a in others:
            for square in squares_through(s, a, domain):
                if square in seen:
                    continue
                seen.add(square)
                rest = [q for q in square if q != s]
                for t in rest:
                    if all(q in self.members or q == s for q in rest if q != t):
                        self.cover[domain.index(t)] += delta

    def add(self, point: GridPoint) -> bool:
        """Insert a point and update cover counts."""
        if point in self.members:
            return False
        # counts are computed against S without the point itself
        self._apply(point, +1)
        self.members.add(point)
        self._order.append(point)
        return True

    def remove(self, point: GridPoint) -> bool:
        """Remove a point and update cover counts."""
        if point not in self.members:
            return False
        self.members.remove(point)
        self._order.remove(point)
        self._apply(point, -1)
        return True

    def cover_count(self, point: GridPoint) -> int:
        return int(self.cover[self.domain.index(point)])

    def would_complete(self, point: GridPoint) -> bool:
        """True if adding the point would create a configuration."""
        return self.cover[self.domain.index(point)] > 0

    def blockers(self, point: GridPoint) -> List[GridPoint]:
        """Members that, together with the point, form a configuration."""
        found: Set[GridPoint] = set()
        others = [a for a in self._order if a != point]
        for a in others:
            if self.squares:
                for square in squares_through(point, a, self.domain):
                    rest = [q for q in square if q != point]
                    if all(q in self.members for q in rest):
                        found.update(rest)
            else:
                for r in corner_completions(point, a, self.domain, self.axis_parallel):
                    if r in self.members:
                        found.update((a, r))
        return sorted(found)

    def uncovered_outside(self) -> np.ndarray:
        """Indices of points outside S whose addition creates nothing."""
        return np.flatnonzero(~self.members.bits & (self.cover == 0))

    def conflicts(self) -> int:
        """Members lying in some configuration of S."""
        return int(np.count_nonzero(self.members.bits & (self.cover > 0)))

    def is_config_free(self) -> bool:
        return self.conflicts() == 0

    def is_saturated(self) -> bool:
        return self.is_config_free() and len(self.uncovered_outside()) == 0

    def snapshot(self) -> PointSet:
        return self.members.copy()
