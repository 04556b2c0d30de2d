"""
Configuration predicates and completions.

Corners here are tilted unless stated otherwise: {x, x+w, x+i*w} with
w != 0, i.e. isosceles right triangles. Axis-parallel corners are
{(a,b), (a+d,b), (a,b+d)} with d != 0. Squares are x, x+y, x+y⊥, x+y+y⊥.
"""

from itertools import permutations
from typing import Iterable, List, Optional, Set, Tuple

from cornerlab.errors import DegenerateInput, NotACorner
from cornerlab.module.grid_core import Domain, GaussianElem, GridPoint

Triple = Tuple[GridPoint, GridPoint, GridPoint]


def _require_distinct(*points: GridPoint) -> None:
    if len(set(points)) != len(points):
        raise DegenerateInput(
            "points must be pairwise distinct",
            points=[tuple(q) for q in points],
        )


def right_angle_at(alpha: GridPoint, beta: GridPoint, gamma: GridPoint, domain: Domain) -> bool:
    """True if alpha is the right angle of an isosceles right triangle alpha, beta, gamma."""
    u = domain.sub(beta, alpha)
    w = domain.sub(gamma, alpha)
    if u == (0, 0):
        return False
    return w == domain.rot90(u) or u == domain.rot90(w)


def is_isosceles_right(a: GridPoint, b: GridPoint, c: GridPoint, domain: Domain) -> bool:
    """
    Tilted corner test.

    True iff some labeling (x, x+w, x+i*w) with w != 0 matches {a, b, c}.

    Raises:
        DegenerateInput: points are not pairwise distinct
    """
    _require_distinct(a, b, c)
    return (
        right_angle_at(a, b, c, domain)
        or right_angle_at(b, a, c, domain)
        or right_angle_at(c, a, b, domain)
    )


def axis_corner_parameter(a: GridPoint, b: GridPoint, c: GridPoint, domain: Domain) -> Optional[int]:
    """The d of an axis-parallel labeling (a, a+(d,0), a+(0,d)) of the ordered triple, if any."""
    u = domain.sub(b, a)
    w = domain.sub(c, a)
    if u[1] != 0 or w[0] != 0 or u[0] != w[1] or u[0] == 0:
        return None
    return u[0]


def is_axis_corner(a: GridPoint, b: GridPoint, c: GridPoint, domain: Domain) -> bool:
    """
    Axis-parallel corner test: {(x,y), (x+d,y), (x,y+d)} for some d != 0.

    Raises:
        DegenerateInput: points are not pairwise distinct
    """
    _require_distinct(a, b, c)
    return any(
        axis_corner_parameter(x, y, z, domain) is not None
        for x, y, z in permutations((a, b, c))
    )


def is_square(points: Iterable[GridPoint], domain: Domain) -> bool:
    """True if the four points are the vertices of a (tilted) square."""
    pts = list(points)
    if len(pts) != 4:
        return False
    _require_distinct(*pts)
    members = set(pts)
    base = pts[0]
    for other in pts[1:]:
        for x, neighbour in ((base, other), (other, base)):
            y = domain.sub(neighbour, x)
            y_perp = domain.rot90(y)
            candidate = {x, neighbour, domain.add(x, y_perp), domain.add(neighbour, y_perp)}
            if candidate == members:
                return True
    return False


def apex(beta: GridPoint, gamma: GridPoint, domain: Domain) -> GridPoint:
    """
    The right-angle vertex alpha with gamma = alpha + i(alpha - beta).

    Computed as alpha = (1+i)/2 * beta + (1-i)/2 * gamma.

    Raises:
        DegenerateInput: beta == gamma
        NotACorner: on an integer grid, no lattice point inside the domain fits
    """
    _require_distinct(beta, gamma)
    if domain.is_prime_plane:
        p = domain.p
        half = pow(2, -1, p)
        b = GaussianElem.from_point(beta, domain)
        g = GaussianElem.from_point(gamma, domain)
        alpha = GaussianElem(1, 1, p).scale(half) * b + GaussianElem(1, -1, p).scale(half) * g
        return alpha.to_point()

    # alpha = (1-i)(gamma + i*beta) / 2, exact in Z[i] or absent
    s = GridPoint(gamma[0] - beta[1], gamma[1] + beta[0])
    alpha = domain.half(GridPoint(s[0] + s[1], s[1] - s[0]))
    if alpha is None or not domain.contains(alpha):
        raise NotACorner(
            "no lattice apex for this hypotenuse",
            beta=tuple(beta),
            gamma=tuple(gamma),
        )
    return alpha


def fourth_vertex(alpha: GridPoint, beta: GridPoint, gamma: GridPoint, domain: Domain) -> GridPoint:
    """
    Fourth vertex of the square on the corner (alpha; beta, gamma).

    Returns beta + gamma - alpha, which is beta + i(alpha - beta) when
    gamma = alpha + i(alpha - beta).

    Raises:
        NotACorner: alpha is not the right angle of an isosceles right triangle
    """
    _require_distinct(alpha, beta, gamma)
    if not right_angle_at(alpha, beta, gamma, domain):
        raise NotACorner(
            "right angle is not at alpha",
            alpha=tuple(alpha),
            beta=tuple(beta),
            gamma=tuple(gamma),
        )
    return domain.sub(domain.add(beta, gamma), alpha)


def gaussian_fourth_vertex(beta: GridPoint, gamma: GridPoint, domain: Domain) -> GridPoint:
    """-i((1+i)/2 * beta - (1-i)/2 * gamma), evaluated in F_p[i]."""
    domain.require_prime_plane("Gaussian fourth vertex")
    p = domain.p
    half = pow(2, -1, p)
    b = GaussianElem.from_point(beta, domain)
    g = GaussianElem.from_point(gamma, domain)
    inner = GaussianElem(1, 1, p).scale(half) * b - GaussianElem(1, -1, p).scale(half) * g
    return (-GaussianElem.i(p) * inner).to_point()


def tilted_completions_raw(p_pt: GridPoint, q_pt: GridPoint, domain: Domain) -> List[GridPoint]:
    """
    The candidate third vertices for a pair, before filtering.

    Two with the right angle at P, two at Q, and up to two on the
    perpendicular bisector (hypotenuse completions, which need exact halving
    on the integer grid).
    """
    d = domain.sub(q_pt, p_pt)
    d_perp = domain.rot90(d)
    candidates = [
        domain.add(p_pt, d_perp),
        domain.sub(p_pt, d_perp),
        domain.add(q_pt, d_perp),
        domain.sub(q_pt, d_perp),
    ]
    total = GridPoint(p_pt[0] + q_pt[0], p_pt[1] + q_pt[1])
    for sign in (1, -1):
        doubled = GridPoint(total[0] + sign * d_perp[0], total[1] + sign * d_perp[1])
        mid = domain.half(doubled)
        if mid is not None:
            candidates.append(domain.reduce(mid))
    return candidates


def axis_completions_raw(p_pt: GridPoint, q_pt: GridPoint, domain: Domain) -> List[GridPoint]:
    """Candidate third vertices of axis-parallel corners through P and Q."""
    d = domain.sub(q_pt, p_pt)
    candidates: List[GridPoint] = []
    if d[1] == 0 and d[0] != 0:
        # P or Q is the apex, the pair lies on a row
        candidates.append(domain.add(p_pt, GridPoint(0, d[0])))
        candidates.append(domain.add(q_pt, GridPoint(0, -d[0])))
    if d[0] == 0 and d[1] != 0:
        candidates.append(domain.add(p_pt, GridPoint(d[1], 0)))
        candidates.append(domain.add(q_pt, GridPoint(-d[1], 0)))
    if domain.reduce(GridPoint(d[0] + d[1], 0))[0] == 0 and d[0] != 0:
        # the pair is the hypotenuse (a+d, b), (a, b+d)
        candidates.append(domain.sub(p_pt, GridPoint(0, d[0])))
        candidates.append(domain.add(p_pt, GridPoint(d[0], 0)))
    return candidates


def corner_completions(
    p_pt: GridPoint,
    q_pt: GridPoint,
    domain: Domain,
    axis_parallel: bool = False,
) -> Set[GridPoint]:
    """
    All points R that complete P, Q to a corner.

    Args:
        p_pt: First point
        q_pt: Second point, distinct from the first
        domain: Universe; results outside it are dropped
        axis_parallel: Complete axis-parallel corners instead of tilted ones

    Returns:
        Set of completions distinct from P and Q
    """
    _require_distinct(p_pt, q_pt)
    raw = (
        axis_completions_raw(p_pt, q_pt, domain)
        if axis_parallel
        else tilted_completions_raw(p_pt, q_pt, domain)
    )
    result = set()
    for r in raw:
        if r != p_pt and r != q_pt and domain.contains(r):
            result.add(r)
    return result


def square_completion_triples(a: GridPoint, b: GridPoint, domain: Domain) -> List[Tuple[GridPoint, GridPoint]]:
    """
    Pairs (c, d) with a, b, c, d a square in which a-b is a side.

    Both squares on the side are returned; out-of-domain ones are dropped.
    """
    side = domain.sub(b, a)
    side_perp = domain.rot90(side)
    result = []
    for sign in (1, -1):
        step = domain.scale(sign, side_perp)
        c = domain.add(b, step)
        d = domain.add(a, step)
        if domain.contains(c) and domain.contains(d):
            result.append((c, d))
    return result
