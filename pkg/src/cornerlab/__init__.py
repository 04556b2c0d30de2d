"""
CornerLab: computational companion for corner and square configurations.

This package provides exact counting of isosceles right triangles and squares
in F_p x F_p and [n] x [n], saturation and extremal searches, coloring audits,
and the Bessel numerics behind the monochromatic measure bound.
"""

__version__ = "0.1.0"
__description__ = "Corners, squares, saturation and coloring audits on finite grids"

from .errors import CornerLabError
from .module.grid_core import Domain, GridPoint, PointSet

__all__ = [
    "CornerLabError",
    "Domain",
    "GridPoint",
    "PointSet",
    "__version__",
]
