"""
Constructions and reference bounds for saturation numbers.
"""

import math

from cornerlab.errors import InfeasibleDomain, WrongResidue
from cornerlab.module.grid_core import Domain, GridPoint, PointSet

# A pair of points completes at most this many corners
COMPLETIONS_PER_PAIR = 6


def vertical_line_set(p: int) -> PointSet:
    """
    The line {(0, i) : i in F_p}.

    It is corner-saturated: an outside point (a, b) forms a corner with
    (0, b) and (0, a + b). So sat(F_p^2, corner) <= p.
    """
    domain = Domain.prime_plane(p)
    return PointSet.from_points(domain, (GridPoint(0, i) for i in range(p)))


def corner_sat_lower_bound(p: int) -> int:
    """
    Smallest m with p^2 - m <= 6 * m(m-1)/2.

    A saturated set of size m has m(m-1)/2 pairs, each completing at most six
    points, and all p^2 - m outside points must be completed. The bound
    behaves like p / sqrt(3).
    """
    if p < 1:
        raise InfeasibleDomain(f"size must be positive, got {p}", p=p)
    total = p * p
    # start just below the root of 3m^2 - 2m - total = 0
    m = max(0, int((2 + math.isqrt(4 + 12 * total)) // 6) - 1)
    while total - m > COMPLETIONS_PER_PAIR * m * (m - 1) // 2:
        m += 1
    while m > 0 and total - (m - 1) <= COMPLETIONS_PER_PAIR * (m - 1) * (m - 2) // 2:
        m -= 1
    return m


def square_sat_lower_bound(p: int) -> float:
    """
    Reference lower bound p^(12/11) - p^(3/5) for square-saturated sets.

    Raises:
        WrongResidue: p ≡ 1 (mod 4)
        InfeasibleDomain: p is not an odd prime
    """
    domain = Domain.prime_plane(p)
    if domain.p_mod_4 == 1:
        raise WrongResidue(f"the square bound needs p ≡ 3 (mod 4), got p = {p}", p=p)
    return p ** (12 / 11) - p ** (3 / 5)


def square_cover_lower_bound(n: int) -> float:
    """Reference bound n^(12/11) for square-cover sets in [n] x [n]."""
    if n < 1:
        raise InfeasibleDomain(f"grid size must be at least 1, got {n}", n=n)
    return n ** (12 / 11)
