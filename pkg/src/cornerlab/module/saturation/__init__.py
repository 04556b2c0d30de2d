"""Saturation checks, constructions, bounds and minimum saturated set search."""

from .bounds import (
    corner_sat_lower_bound,
    square_cover_lower_bound,
    square_sat_lower_bound,
    vertical_line_set,
)
from .checkpoint import SearchCheckpoint, load_checkpoint, save_checkpoint
from .checks import (
    SaturationKind,
    SaturationReport,
    check_saturated,
    covered_mask,
    is_corner_free,
    is_square_free,
)
from .katz_tao import KatzTaoReport, katz_tao_probe
from .search import (
    SaturationSearch,
    SearchMode,
    SearchResult,
    SearchStatus,
    greedy_saturated,
    min_saturated_search,
    orbit_representatives,
    saturation_lower_bound,
)

__all__ = [
    "KatzTaoReport",
    "SaturationKind",
    "SaturationReport",
    "SaturationSearch",
    "SearchCheckpoint",
    "SearchMode",
    "SearchResult",
    "SearchStatus",
    "check_saturated",
    "corner_sat_lower_bound",
    "covered_mask",
    "greedy_saturated",
    "is_corner_free",
    "is_square_free",
    "katz_tao_probe",
    "load_checkpoint",
    "min_saturated_search",
    "orbit_representatives",
    "save_checkpoint",
    "saturation_lower_bound",
    "square_cover_lower_bound",
    "square_sat_lower_bound",
    "vertical_line_set",
]
