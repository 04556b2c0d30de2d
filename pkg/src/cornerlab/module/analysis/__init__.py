"""Special-function numerics for the monochromatic measure bound."""

from .bessel import (
    MinimizationResult,
    bessel_j0,
    decay_envelope,
    g,
    golden_section,
    measure_lower_bound,
    minimize_g,
)

__all__ = [
    "MinimizationResult",
    "bessel_j0",
    "decay_envelope",
    "g",
    "golden_section",
    "measure_lower_bound",
    "minimize_g",
]
