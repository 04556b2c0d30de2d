"""
Brute-force reference counters.

Plain loops over (x, y) and over point triples, written independently of the
vectorized engine in counting.py. They are slow and only meant for small
domains: the claim battery and the tests compare the fast paths against them.
"""

from fractions import Fraction
from itertools import combinations
from typing import Any, Sequence

from cornerlab.module.grid_core import Domain, GridPoint, PointSet
from .patterns import Matrix, apply
from .predicates import is_isosceles_right, is_axis_corner, is_square


def _y_vectors(domain: Domain, include_degenerate: bool):
    n = domain.size
    span = range(n) if domain.is_prime_plane else range(-(n - 1), n)
    for y1 in span:
        for y2 in span:
            if y1 == 0 and y2 == 0 and not include_degenerate:
                continue
            yield (y1, y2)


def naive_pattern_count(
    points: PointSet,
    maps: Sequence[Matrix],
    include_degenerate: bool = False,
) -> int:
    """Count (x, y) with x and every x + M y in the set, by direct loops."""
    domain = points.domain
    total = 0
    for x in points:
        for y in _y_vectors(domain, include_degenerate):
            hit = True
            for m in maps:
                v = apply(m, y)
                q = domain.reduce(GridPoint(x[0] + v[0], x[1] + v[1]))
                if q not in points:
                    hit = False
                    break
            if hit:
                total += 1
    return total


def naive_sigma(f: Any, g: Any, h: Any, domain: Domain, include_degenerate: bool = False) -> Fraction:
    """sum_{x,y} f(x) g(x+y) h(x+y⊥) with Fractions, by direct loops."""
    total = Fraction(0)
    for x in domain.points():
        fx = Fraction(f[domain.index(x)])
        if fx == 0:
            continue
        for y in _y_vectors(domain, include_degenerate):
            a = domain.reduce(GridPoint(x[0] + y[0], x[1] + y[1]))
            b = domain.reduce(GridPoint(x[0] - y[1], x[1] + y[0]))
            if not (domain.contains(a) and domain.contains(b)):
                continue
            total += fx * Fraction(g[domain.index(a)]) * Fraction(h[domain.index(b)])
    return total


def naive_is_corner_free(points: PointSet, axis_parallel: bool = False) -> bool:
    """Triple enumeration; O(|S|^3)."""
    predicate = is_axis_corner if axis_parallel else is_isosceles_right
    for a, b, c in combinations(points.to_list(), 3):
        if predicate(a, b, c, points.domain):
            return False
    return True


def naive_is_square_free(points: PointSet) -> bool:
    """Quadruple enumeration; O(|S|^4)."""
    for quad in combinations(points.to_list(), 4):
        if is_square(quad, points.domain):
            return False
    return True


def naive_uncovered(points: PointSet, squares: bool = False) -> list:
    """Outside points that complete no configuration with members of the set."""
    domain = points.domain
    members = points.to_list()
    uncovered = []
    for t in domain.points():
        if t in points:
            continue
        if squares:
            covered = any(
                is_square((t,) + triple, domain) for triple in combinations(members, 3)
            )
        else:
            covered = any(
                is_isosceles_right(t, a, b, domain) for a, b in combinations(members, 2)
            )
        if not covered:
            uncovered.append(t)
    return uncovered
