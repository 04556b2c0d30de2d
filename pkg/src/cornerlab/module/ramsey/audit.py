"""
Monochromatic corner audits.

This module counts monochromatic tilted corners of a two-coloring of F_p x F_p
and compares the total against p^3/4 - C p^(5/2). C is a reporting parameter
taken from configuration; a negative margin is logged for investigation and
never treated as a failure.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from cornerlab.config import get_settings
from cornerlab.errors import WrongColorCount
from cornerlab.module.configs import balanced_function, count_corners, decompose_sigma
from cornerlab.module.grid_core import Domain, spawn_rngs
from cornerlab.utils.logging import StructuredLogger, get_logger

from .coloring import Coloring

logger = get_logger(__name__)


def _require_two_colors(coloring: Coloring, operation: str) -> None:
    if coloring.r != 2:
        raise WrongColorCount(f"{operation} needs a two-coloring, got r = {coloring.r}", r=coloring.r)
    coloring.domain.require_prime_plane(operation)


def corner_bound(p: int, bound_constant: float) -> float:
    """p^3/4 - C p^(5/2)."""
    return p ** 3 / 4 - bound_constant * p ** 2.5


@dataclass
class MonoCornerCounts:
    """Monochromatic corner counts of one two-coloring."""
    p: int
    sigma_r: int
    sigma_b: int
    bound: float
    bound_constant: float

    @property
    def total(self) -> int:
        return self.sigma_r + self.sigma_b

    @property
    def margin(self) -> float:
        return self.total - self.bound

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "p": self.p,
            "sigma_R": self.sigma_r,
            "sigma_B": self.sigma_b,
            "total": self.total,
            "bound": self.bound,
            "bound_constant": self.bound_constant,
            "leading_term": self.p ** 3 / 4,
            "margin": self.margin,
        }


def mono_corner_counts(
    coloring: Coloring,
    bound_constant: Optional[float] = None,
    threads: int = 1,
) -> MonoCornerCounts:
    """
    Count monochromatic corners in each color class.

    Args:
        coloring: Two-coloring of a prime plane; color 0 is R, color 1 is B
        bound_constant: C in p^3/4 - C p^(5/2); defaults to the configured value
        threads: Worker threads for the counters

    Raises:
        WrongColorCount: r != 2
        DomainMismatch: not a prime plane
    """
    _require_two_colors(coloring, "monochromatic corner count")
    if bound_constant is None:
        bound_constant = get_settings().ramsey.bound_constant
    p = coloring.domain.p

    counts = MonoCornerCounts(
        p=p,
        sigma_r=count_corners(coloring.class_set(0), threads=threads),
        sigma_b=count_corners(coloring.class_set(1), threads=threads),
        bound=corner_bound(p, bound_constant),
        bound_constant=bound_constant,
    )
    if counts.margin < 0:
        logger.warning(
            f"Monochromatic corner count {counts.total} below p^3/4 - {bound_constant} p^(5/2) "
            f"= {counts.bound:.2f} at p={p}"
        )
    return counts


@dataclass
class MonoDecompositionReport:
    """Decomposition of sigma_R + sigma_B into main terms and corrections."""
    main_terms: List[Fraction]
    corrections: List[Fraction]
    reconstructed: Fraction
    sigma_total: int
    balanced_sums: List[Fraction]
    classes: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def residual(self) -> Fraction:
        return self.reconstructed - self.sigma_total

    @property
    def exact(self) -> bool:
        return self.residual == 0

    @property
    def balanced(self) -> bool:
        return all(s == 0 for s in self.balanced_sums)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary (Fractions as strings)."""
        return {
            "main_terms": [str(t) for t in self.main_terms],
            "main_term_total": str(sum(self.main_terms, Fraction(0))),
            "corrections": [str(t) for t in self.corrections],
            "reconstructed": str(self.reconstructed),
            "sigma_total": self.sigma_total,
            "residual": str(self.residual),
            "exact": self.exact,
            "balanced_sums": [str(s) for s in self.balanced_sums],
            "balanced": self.balanced,
            "classes": self.classes,
        }


def mono_decomposition_audit(coloring: Coloring, threads: int = 1) -> MonoDecompositionReport:
    """
    Run the sigma decomposition on both color classes.

    The main terms are |R|^3/p^2 and |B|^3/p^2; the report also carries every
    correction term and the exact residual against sigma_R + sigma_B.
    """
    _require_two_colors(coloring, "monochromatic decomposition audit")
    decompositions = [decompose_sigma(coloring.class_set(c), threads=threads) for c in (0, 1)]
    balanced_sums = [
        sum(balanced_function(coloring.class_set(c)), Fraction(0)) for c in (0, 1)
    ]

    report = MonoDecompositionReport(
        main_terms=[d.main_term for d in decompositions],
        corrections=[d.corrections for d in decompositions],
        reconstructed=sum((d.total for d in decompositions), Fraction(0)),
        sigma_total=sum(d.sigma for d in decompositions),
        balanced_sums=balanced_sums,
        classes=[d.to_dict() for d in decompositions],
    )
    if not report.exact:
        logger.error(f"Decomposition residual {report.residual} on {coloring.domain.label}")
    return report


@dataclass
class MonoAuditBatch:
    """Summary of monochromatic counts over many random colorings."""
    p: int
    count: int
    seed: int
    bound: float
    bound_constant: float
    min_total: int
    max_total: int
    mean_total: float
    argmin: int
    violations: int

    @property
    def min_margin(self) -> float:
        return self.min_total - self.bound

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "p": self.p,
            "count": self.count,
            "seed": self.seed,
            "leading_term": self.p ** 3 / 4,
            "bound": self.bound,
            "bound_constant": self.bound_constant,
            "min_total": self.min_total,
            "max_total": self.max_total,
            "mean_total": self.mean_total,
            "argmin": self.argmin,
            "min_margin": self.min_margin,
            "violations": self.violations,
        }


def mono_audit_batch(
    p: int,
    count: Optional[int] = None,
    seed: int = 0,
    bound_constant: Optional[float] = None,
    threads: int = 1,
) -> MonoAuditBatch:
    """
    Audit many uniformly random two-colorings of F_p x F_p.

    Coloring k uses child stream k of the seed, so the summary does not depend
    on the thread count.
    """
    settings = get_settings()
    if count is None:
        count = settings.ramsey.random_colorings
    if count < 1:
        raise ValueError(f"an audit batch needs at least one coloring, got count={count}")
    if bound_constant is None:
        bound_constant = settings.ramsey.bound_constant
    domain = Domain.prime_plane(p)
    log = StructuredLogger(__name__, {"domain": domain.label, "seed": seed, "count": count})
    log.info("Starting monochromatic audit batch")

    rngs = spawn_rngs(seed, count)

    def audit(k: int) -> int:
        coloring = Coloring.from_rng(domain, 2, rngs[k])
        return count_corners(coloring.class_set(0)) + count_corners(coloring.class_set(1))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            totals = list(pool.map(audit, range(count)))
    else:
        totals = [audit(k) for k in range(count)]

    bound = corner_bound(p, bound_constant)
    min_total = min(totals)
    batch = MonoAuditBatch(
        p=p,
        count=count,
        seed=seed,
        bound=bound,
        bound_constant=bound_constant,
        min_total=min_total,
        max_total=max(totals),
        mean_total=sum(totals) / count,
        argmin=totals.index(min_total),
        violations=sum(1 for t in totals if t < bound),
    )
    if batch.violations:
        log.warning("Colorings below the reporting bound", violations=batch.violations, bound=f"{bound:.2f}")
    log.info("Audit batch finished", min_total=min_total, margin=f"{batch.min_margin:.2f}")
    return batch
