"""
Saturation predicates.

A set S is saturated for a configuration when it contains no copy of the
configuration and every point outside S completes one together with points
of S. Copies are similar copies (tilted corners and squares); axis-parallel
corners are available through a flag for comparison runs. These checks use
pairwise completion lookups and share no code with the search engines.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Optional, Tuple

import numpy as np

from cornerlab.module.configs import corner_completions, square_completion_triples
from cornerlab.module.grid_core import GridPoint, PointSet


class SaturationKind(Enum):
    """Configurations a set can be saturated for."""
    CORNER = "corner"
    SQUARE = "square"
    # every outside point is the fourth vertex of a square; squares in S allowed
    SQUARE_COVER = "square_cover"

    @property
    def uses_squares(self) -> bool:
        return self is not SaturationKind.CORNER


@dataclass
class SaturationReport:
    """Result of a saturation check; at most one witness is set."""
    is_config_free: bool
    is_saturated: bool
    witness_uncovered: Optional[GridPoint] = None
    witness_config: Optional[Tuple[GridPoint, ...]] = None
    uncovered_count: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "is_config_free": self.is_config_free,
            "is_saturated": self.is_saturated,
            "witness_uncovered": list(self.witness_uncovered) if self.witness_uncovered else None,
            "witness_config": [list(q) for q in self.witness_config] if self.witness_config else None,
            "uncovered_count": self.uncovered_count,
        }


def find_corner(points: PointSet, axis_parallel: bool = False) -> Optional[Tuple[GridPoint, GridPoint, GridPoint]]:
    """A corner contained in the set, or None."""
    for a, b in combinations(points.to_list(), 2):
        for r in corner_completions(a, b, points.domain, axis_parallel):
            if r in points:
                return (a, b, r)
    return None


def find_square(points: PointSet) -> Optional[Tuple[GridPoint, ...]]:
    """A square contained in the set, or None."""
    for a, b in combinations(points.to_list(), 2):
        for c, d in square_completion_triples(a, b, points.domain):
            if c in points and d in points:
                return (a, b, c, d)
    return None


def is_corner_free(points: PointSet, axis_parallel: bool = False) -> bool:
    """True if no three points of the set form a corner."""
    return find_corner(points, axis_parallel) is None


def is_square_free(points: PointSet) -> bool:
    """True if no four points of the set form a square."""
    return find_square(points) is None


def covered_mask(points: PointSet, kind: SaturationKind, axis_parallel: bool = False) -> np.ndarray:
    """Boolean mask of the points completed by members of the set."""
    domain = points.domain
    mask = np.zeros(domain.num_points, dtype=bool)
    for a, b in combinations(points.to_list(), 2):
        if kind.uses_squares:
            for c, d in square_completion_triples(a, b, domain):
                # three of a, b, c, d present marks the fourth
                if c in points:
                    mask[domain.index(d)] = True
                if d in points:
                    mask[domain.index(c)] = True
        else:
            for r in corner_completions(a, b, domain, axis_parallel):
                mask[domain.index(r)] = True
    return mask


def check_saturated(
    points: PointSet,
    kind: SaturationKind = SaturationKind.CORNER,
    axis_parallel: bool = False,
) -> SaturationReport:
    """
    Check configuration-freeness and saturation.

    Args:
        points: Candidate set
        kind: CORNER, SQUARE, or SQUARE_COVER (cover only, squares allowed)
        axis_parallel: For CORNER, use axis-parallel corners

    Returns:
        SaturationReport; a contained configuration is reported before an
        uncovered point. SQUARE_COVER places no freeness requirement, so its
        is_config_free is always True.
    """
    if kind is SaturationKind.CORNER:
        witness = find_corner(points, axis_parallel)
    elif kind is SaturationKind.SQUARE:
        witness = find_square(points)
    else:
        witness = None
    if witness is not None:
        return SaturationReport(is_config_free=False, is_saturated=False, witness_config=witness)

    mask = covered_mask(points, kind, axis_parallel)
    uncovered = np.flatnonzero(~points.bits & ~mask)
    if len(uncovered):
        return SaturationReport(
            is_config_free=True,
            is_saturated=False,
            witness_uncovered=points.domain.point(int(uncovered[0])),
            uncovered_count=len(uncovered),
        )
    return SaturationReport(is_config_free=True, is_saturated=True)
