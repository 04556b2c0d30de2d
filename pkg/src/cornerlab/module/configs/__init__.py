"""Configuration predicates, exact counters and the sigma decomposition."""

from .counting import (
    CORNER_MAPS,
    SQUARE_MAPS,
    count_corners,
    count_matrix_pattern,
    count_squares,
    pattern_sum,
    unordered_count,
)
from .coverage import CoverageTracker, squares_through
from .hypergraph import ConfigHypergraph, ConfigShape, HypergraphState
from .patterns import (
    IDENTITY,
    ROT90,
    SQUARE_DIAGONAL,
    PatternSpec,
    UniformCoverReport,
    uniform_cover_check,
)
from .predicates import (
    apex,
    corner_completions,
    fourth_vertex,
    gaussian_fourth_vertex,
    is_axis_corner,
    is_isosceles_right,
    is_square,
    right_angle_at,
    square_completion_triples,
)
from .sigma import SigmaDecomposition, balanced_function, decompose_sigma, sigma_trilinear

__all__ = [
    "CORNER_MAPS",
    "SQUARE_MAPS",
    "IDENTITY",
    "ROT90",
    "SQUARE_DIAGONAL",
    "ConfigHypergraph",
    "ConfigShape",
    "CoverageTracker",
    "HypergraphState",
    "PatternSpec",
    "SigmaDecomposition",
    "UniformCoverReport",
    "apex",
    "balanced_function",
    "corner_completions",
    "count_corners",
    "count_matrix_pattern",
    "count_squares",
    "decompose_sigma",
    "fourth_vertex",
    "gaussian_fourth_vertex",
    "is_axis_corner",
    "is_isosceles_right",
    "is_square",
    "pattern_sum",
    "right_angle_at",
    "sigma_trilinear",
    "square_completion_triples",
    "squares_through",
    "uniform_cover_check",
    "unordered_count",
]
