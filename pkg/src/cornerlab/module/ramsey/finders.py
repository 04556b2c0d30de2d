"""
Monochromatic pattern finders.

Deterministic scans for a monochromatic axis-parallel corner under any
number of colors, and for a monochromatic collinear triple x, y, z whose
steps have prescribed norms. Every witness is re-checked before it is
returned.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cornerlab.errors import NotQuadraticResidue, OutOfRange, ZeroInput
from cornerlab.module.configs import is_axis_corner
from cornerlab.module.grid_core import Domain, GridPoint, norm
from cornerlab.utils.logging import get_logger

from .coloring import Coloring

logger = get_logger(__name__)

# Largest number of points an exhaustive coloring sweep will enumerate
SWEEP_MAX_BITS = 20
SWEEP_CHUNK = 1 << 16


@dataclass
class MonoPattern:
    """A monochromatic witness."""
    points: Tuple[GridPoint, ...]
    color: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"points": [list(q) for q in self.points], "color": self.color}


def _axis_offsets(domain: Domain) -> List[int]:
    if domain.is_prime_plane:
        return list(range(1, domain.size))
    return list(range(1, domain.size)) + [-d for d in range(1, domain.size)]


def find_mono_axis_corner(coloring: Coloring) -> Optional[MonoPattern]:
    """
    First monochromatic corner {(x,y), (x+d,y), (x,y+d)}, d != 0.

    Scan order: d = 1, 2, ... (on integer grids followed by d = -1, -2, ...),
    then base points in row-major order.
    """
    domain = coloring.domain
    grid = coloring.grid()
    n = domain.size

    for d in _axis_offsets(domain):
        if domain.is_prime_plane:
            base = grid
            right = np.roll(grid, -d, axis=0)
            up = np.roll(grid, -d, axis=1)
            offset = 0
        elif d > 0:
            base = grid[: n - d, : n - d]
            right = grid[d:, : n - d]
            up = grid[: n - d, d:]
            offset = 0
        else:
            e = -d
            base = grid[e:, e:]
            right = grid[: n - e, e:]
            up = grid[e:, : n - e]
            offset = e
        hits = np.flatnonzero((base == right) & (base == up))
        if len(hits) == 0:
            continue

        width = base.shape[1]
        x = int(hits[0] // width) + offset
        y = int(hits[0] % width) + offset
        a = GridPoint(x, y)
        b = domain.reduce(GridPoint(x + d, y))
        c = domain.reduce(GridPoint(x, y + d))
        color = coloring[a]
        if not (is_axis_corner(a, b, c, domain) and coloring[b] == color and coloring[c] == color):
            raise AssertionError(f"axis corner scan produced an invalid witness {(a, b, c)}")
        return MonoPattern(points=(a, b, c), color=color)
    return None


def is_quadratic_residue(x: int, p: int) -> bool:
    """
    Euler criterion x^((p-1)/2) = 1 (mod p).

    Raises:
        ZeroInput: x = 0 mod p
    """
    x %= p
    if x == 0:
        raise ZeroInput("0 is neither a residue nor a non-residue", p=p)
    return pow(x, (p - 1) // 2, p) == 1


def _square_roots(p: int) -> Dict[int, List[int]]:
    roots: Dict[int, List[int]] = {}
    for t in range(1, p):
        roots.setdefault(t * t % p, []).append(t)
    return roots


def projective_directions(p: int) -> List[GridPoint]:
    """One direction per line through the origin: (1, m) for each m, then (0, 1)."""
    return [GridPoint(1, m) for m in range(p)] + [GridPoint(0, 1)]


def _check_norms(a: int, b: int, p: int, force: bool) -> Tuple[int, int]:
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise ZeroInput("step norms must be nonzero", a=a, b=b)
    ratio = a * pow(b, -1, p) % p
    if not is_quadratic_residue(ratio, p):
        if not force:
            raise NotQuadraticResidue(f"a/b = {ratio} is not a quadratic residue mod {p}", a=a, b=b, p=p)
        logger.warning(f"Scanning with non-residue ratio a/b = {ratio} mod {p}")
    return a, b


def collinear_steps(p: int, a: int, b: int) -> List[Tuple[GridPoint, int, int]]:
    """
    Every (v, t1, t2) with t1^2 N(v) = a, t2^2 N(v) = b and x, x+t1 v, x+(t1+t2) v distinct.

    Directions are projective, so each line is visited once.
    """
    roots = _square_roots(p)
    steps = []
    for v in projective_directions(p):
        nv = (v.x * v.x + v.y * v.y) % p
        if nv == 0:
            continue
        inv = pow(nv, -1, p)
        for t1 in roots.get(a * inv % p, []):
            for t2 in roots.get(b * inv % p, []):
                if (t1 + t2) % p == 0:
                    continue
                steps.append((v, t1, t2))
    return steps


def _is_collinear_witness(x: GridPoint, y: GridPoint, z: GridPoint, a: int, b: int, domain: Domain) -> bool:
    u = domain.sub(y, x)
    w = domain.sub(z, y)
    parallel = (u.x * w.y - u.y * w.x) % domain.p == 0
    return len({x, y, z}) == 3 and parallel and norm(u, domain) == a and norm(w, domain) == b


def find_mono_collinear_triple(
    coloring: Coloring,
    a: int,
    b: int,
    force: bool = False,
) -> Optional[MonoPattern]:
    """
    First monochromatic collinear x, y, z with N(y-x) = a, N(z-y) = b.

    Scans directions, then t1, then t2, then x in row-major order.

    Args:
        coloring: Coloring of a prime plane
        a, b: Nonzero step norms
        force: Scan even when a/b is not a quadratic residue

    Raises:
        ZeroInput: a or b is zero mod p
        NotQuadraticResidue: a/b is a non-residue and force is not set
        DomainMismatch: not a prime plane
    """
    domain = coloring.domain
    domain.require_prime_plane("collinear triple search")
    p = domain.p
    a, b = _check_norms(a, b, p, force)

    idx = np.arange(domain.num_points)
    xs, ys = idx // p, idx % p
    colors = coloring.colors

    for v, t1, t2 in collinear_steps(p, a, b):
        s = t1 + t2
        mid = ((xs + t1 * v.x) % p) * p + (ys + t1 * v.y) % p
        end = ((xs + s * v.x) % p) * p + (ys + s * v.y) % p
        hits = np.flatnonzero((colors == colors[mid]) & (colors == colors[end]))
        if len(hits) == 0:
            continue
        k = int(hits[0])
        x = domain.point(k)
        y = domain.point(int(mid[k]))
        z = domain.point(int(end[k]))
        if not _is_collinear_witness(x, y, z, a, b, domain):
            raise AssertionError(f"collinear scan produced an invalid witness {(x, y, z)}")
        return MonoPattern(points=(x, y, z), color=int(colors[k]))
    return None


@dataclass
class CollinearSweepReport:
    """Exhaustive count of two-colorings without a monochromatic triple."""
    p: int
    a: int
    b: int
    colorings: int
    triples: int
    avoiding: int
    first_avoiding: Optional[List[int]]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "p": self.p,
            "a": self.a,
            "b": self.b,
            "colorings": self.colorings,
            "triples": self.triples,
            "avoiding": self.avoiding,
            "first_avoiding": self.first_avoiding,
        }


def collinear_sweep(p: int, a: int, b: int, force: bool = False, max_bits: int = SWEEP_MAX_BITS) -> CollinearSweepReport:
    """
    Check every two-coloring of F_p x F_p for a monochromatic norm-(a, b) triple.

    Coloring number c gives point index i the color (c >> i) & 1.

    Raises:
        OutOfRange: p^2 exceeds max_bits
    """
    domain = Domain.prime_plane(p)
    bits = domain.num_points
    if bits > max_bits:
        raise OutOfRange(f"a sweep over 2^{bits} colorings is too large", p=p, max_bits=max_bits)
    a, b = _check_norms(a, b, p, force)

    triples = set()
    for k in range(bits):
        x = domain.point(k)
        for v, t1, t2 in collinear_steps(p, a, b):
            y = domain.add(x, domain.scale(t1, v))
            z = domain.add(y, domain.scale(t2, v))
            triples.add(tuple(sorted((k, domain.index(y), domain.index(z)))))
    table = np.array(sorted(triples), dtype=np.int64).reshape(-1, 3)

    total = 1 << bits
    avoiding = 0
    first: Optional[int] = None
    for start in range(0, total, SWEEP_CHUNK):
        codes = np.arange(start, min(start + SWEEP_CHUNK, total), dtype=np.int64)
        colors = (codes[:, None] >> np.arange(bits, dtype=np.int64)) & 1
        c0, c1, c2 = colors[:, table[:, 0]], colors[:, table[:, 1]], colors[:, table[:, 2]]
        mono = ((c0 == c1) & (c1 == c2)).any(axis=1)
        free = np.flatnonzero(~mono)
        avoiding += len(free)
        if first is None and len(free):
            first = int(codes[free[0]])

    logger.info(f"Collinear sweep p={p} a={a} b={b}: {avoiding} of {total} colorings avoid every triple")
    return CollinearSweepReport(
        p=p,
        a=a,
        b=b,
        colorings=total,
        triples=len(table),
        avoiding=avoiding,
        first_avoiding=None if first is None else [(first >> i) & 1 for i in range(bits)],
    )
