"""Coloring audits: monochromatic corners, axis-parallel corners and collinear triples."""

from .audit import (
    MonoAuditBatch,
    MonoCornerCounts,
    MonoDecompositionReport,
    corner_bound,
    mono_audit_batch,
    mono_corner_counts,
    mono_decomposition_audit,
)
from .coloring import Coloring, ColoringFile
from .finders import (
    CollinearSweepReport,
    MonoPattern,
    collinear_steps,
    collinear_sweep,
    find_mono_axis_corner,
    find_mono_collinear_triple,
    is_quadratic_residue,
    projective_directions,
)

__all__ = [
    "CollinearSweepReport",
    "Coloring",
    "ColoringFile",
    "MonoAuditBatch",
    "MonoCornerCounts",
    "MonoDecompositionReport",
    "MonoPattern",
    "collinear_steps",
    "collinear_sweep",
    "corner_bound",
    "find_mono_axis_corner",
    "find_mono_collinear_triple",
    "is_quadratic_residue",
    "mono_audit_batch",
    "mono_corner_counts",
    "mono_decomposition_audit",
    "projective_directions",
]
