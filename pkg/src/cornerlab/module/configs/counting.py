"""
Exact ordered counting of configurations.

Every count here is a sum over (x, y) of a product of functions evaluated at
x and at x + L_j y for a list of linear maps L_j:

    sum_{x, y} f_0(x) f_1(x + L_1 y) ... f_k(x + L_k y)

In a prime plane y ranges over F_p^2; on the integer grid it ranges over
[-(n-1), n-1]^2 and points falling outside the grid contribute 0. y = 0 is
excluded unless include_degenerate is set. The y-range is split into slices
that are evaluated independently (optionally on a thread pool) and summed as
Python integers, so results never depend on the slice or thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from cornerlab.module.grid_core import Domain, PointSet
from .patterns import IDENTITY, ROT90, Matrix, PatternSpec

# Elements evaluated per vectorized block (x-count times y-count)
BLOCK_ELEMENTS = 1 << 20

CORNER_MAPS: List[Matrix] = [IDENTITY, ROT90]
SQUARE_MAPS: List[Matrix] = [IDENTITY, ROT90, ((1, -1), (1, 1))]

# Ordered (x, y) occurrences per unordered configuration
UNORDERED_DIVISOR = {"corner": 1, "square": 4}


def y_range(domain: Domain, include_degenerate: bool) -> np.ndarray:
    """All y vectors summed over, as an (m, 2) array."""
    n = domain.size
    if domain.is_prime_plane:
        values = np.arange(n)
    else:
        values = np.arange(-(n - 1), n)
    yy = np.stack(np.meshgrid(values, values, indexing="ij"), axis=-1).reshape(-1, 2)
    if not include_degenerate:
        yy = yy[(yy[:, 0] != 0) | (yy[:, 1] != 0)]
    return yy


def point_coords(domain: Domain) -> np.ndarray:
    n = domain.size
    idx = np.arange(domain.num_points)
    return np.stack([idx // n, idx % n], axis=-1)


def target_indices(domain: Domain, coords: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """
    Row-major index of coords[:, None] + shifts[None, :].

    Out-of-grid targets map to num_points, the index of an appended zero.
    """
    n = domain.size
    tx = coords[:, 0:1] + shifts[None, :, 0]
    ty = coords[:, 1:2] + shifts[None, :, 1]
    if domain.is_prime_plane:
        return (tx % n) * n + (ty % n)
    inside = (tx >= 0) & (tx < n) & (ty >= 0) & (ty < n)
    return np.where(inside, tx * n + ty, domain.num_points)


def _as_values(values: np.ndarray, dtype) -> np.ndarray:
    flat = np.asarray(values).reshape(-1)
    return np.append(flat.astype(dtype), np.zeros(1, dtype=dtype))


def _needs_object(values: Sequence[np.ndarray], terms: int) -> bool:
    bound = 1
    for v in values:
        if np.asarray(v).dtype == object:
            return True
        bound *= int(np.max(np.abs(v))) if np.size(v) else 0
    return bound * terms >= 2 ** 62


def pattern_sum(
    values: Sequence[np.ndarray],
    maps: Sequence[Matrix],
    domain: Domain,
    include_degenerate: bool = False,
    threads: int = 1,
) -> int:
    """
    Evaluate sum_{x,y} values[0](x) * prod_j values[j](x + maps[j-1] y).

    Args:
        values: len(maps) + 1 integer arrays of length size^2 (row-major)
        maps: Linear maps applied to y, as integer 2x2 matrices
        domain: Universe
        include_degenerate: Keep the y = 0 term
        threads: Worker threads for the y-slices

    Returns:
        The exact integer sum
    """
    if len(values) != len(maps) + 1:
        raise ValueError("need one value array per pattern point")
    yy = y_range(domain, include_degenerate)
    if len(yy) == 0:
        return 0
    coords = point_coords(domain)
    dtype = object if _needs_object(values, domain.num_points * len(yy)) else np.int64
    base = np.asarray(values[0]).reshape(-1).astype(dtype)
    extended = [_as_values(v, dtype) for v in values[1:]]
    mats = [np.array(m, dtype=np.int64) for m in maps]
    shifted_y = [yy @ m.T for m in mats]

    # Only x with a nonzero base weight can contribute
    active = np.flatnonzero(base != 0)
    if len(active) == 0:
        return 0
    coords = coords[active]
    base = base[active]

    block = max(1, BLOCK_ELEMENTS // max(1, len(active)))
    slices = [slice(start, min(start + block, len(yy))) for start in range(0, len(yy), block)]

    def evaluate(sl: slice) -> int:
        acc = base[:, None]
        for ext, shifts in zip(extended, shifted_y):
            acc = acc * ext[target_indices(domain, coords, shifts[sl])]
        return int(acc.sum())

    if threads > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(evaluate, slices))
    else:
        partials = [evaluate(sl) for sl in slices]
    return sum(partials)


def _indicator(points: PointSet) -> np.ndarray:
    return points.bits.astype(np.int64)


def count_corners(points: PointSet, include_degenerate: bool = False, threads: int = 1) -> int:
    """
    Ordered corner count sum_{x,y} A(x) A(x+y) A(x+y⊥).

    Each unordered tilted corner is counted exactly once.
    """
    a = _indicator(points)
    return pattern_sum([a, a, a], CORNER_MAPS, points.domain, include_degenerate, threads)


def count_squares(points: PointSet, include_degenerate: bool = False, threads: int = 1) -> int:
    """
    Ordered square count sum_{x,y} A(x) A(x+y) A(x+y⊥) A(x+y+y⊥).

    Each unordered square is counted four times (once per vertex).
    """
    a = _indicator(points)
    return pattern_sum([a, a, a, a], SQUARE_MAPS, points.domain, include_degenerate, threads)


def count_matrix_pattern(points: PointSet, spec: PatternSpec, threads: int = 1) -> int:
    """
    Number of (x, y), y != 0, with x and every x + M_j y in A.

    Raises:
        InvalidPattern: spec fails validation for the domain's modulus
    """
    domain = points.domain
    if spec.modulus != domain.modulus:
        spec = PatternSpec.create(spec.matrices, domain.modulus, spec.name)
    a = _indicator(points)
    return pattern_sum([a] * (spec.k + 1), list(spec.matrices), domain, False, threads)


def unordered_count(ordered: int, kind: str) -> int:
    """Convert an ordered count to unordered configurations."""
    return ordered // UNORDERED_DIVISOR[kind]


def pattern_points(x, y, maps: Sequence[Matrix], domain: Domain) -> Optional[list]:
    """The pattern points x, x + L_j y, or None if one leaves the grid."""
    result = [domain.reduce(x)]
    for m in maps:
        v = (m[0][0] * y[0] + m[0][1] * y[1], m[1][0] * y[0] + m[1][1] * y[1])
        q = domain.reduce((x[0] + v[0], x[1] + v[1]))
        if not domain.contains(q):
            return None
        result.append(q)
    return result
