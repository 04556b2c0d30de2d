"""
Claim verification battery.

This module runs the invariant checks of every mathematical module at the
configured sizes and collects them into one ClaimReport. Every random draw is
derived from the battery seed and the check name, so the report (and its
digest) depends only on the seed and the size lists, never on the thread
count.
"""

import zlib
from itertools import combinations
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from cornerlab.config import CornerLabConfig, get_settings
from cornerlab.errors import InfeasibleDomain
from cornerlab.module.analysis import measure_lower_bound, minimize_g
from cornerlab.module.configs import (
    IDENTITY,
    ROT90,
    SQUARE_DIAGONAL,
    CORNER_MAPS,
    SQUARE_MAPS,
    PatternSpec,
    apex,
    count_corners,
    count_matrix_pattern,
    count_squares,
    decompose_sigma,
    fourth_vertex,
    gaussian_fourth_vertex,
    uniform_cover_check,
)
from cornerlab.module.configs.oracles import naive_pattern_count
from cornerlab.module.extremal import ExtremalKind, ExtremalMode, is_config_free, max_config_free
from cornerlab.module.grid_core import Domain, GaussianElem, GridPoint, PointSet, is_prime, make_rng
from cornerlab.module.ramsey import Coloring, mono_audit_batch, mono_corner_counts
from cornerlab.module.saturation import (
    SaturationKind,
    SearchMode,
    SearchStatus,
    check_saturated,
    corner_sat_lower_bound,
    covered_mask,
    greedy_saturated,
    katz_tao_probe,
    min_saturated_search,
    vertical_line_set,
)
from cornerlab.utils.logging import StructuredLogger

# Reference value of 1/4 + g_min/4
REFERENCE_MEASURE_BOUND = 0.007918101275
PUBLISHED_MEASURE_BOUND = 0.0079
MEASURE_TOLERANCE = 1e-6

# Primes for the empirical monochromatic audit
MONO_AUDIT_PRIMES = (7, 11)

# Largest grid searched exactly for corner-free sets
EXACT_GRID_MAX = 5


class CheckResult(BaseModel):
    """Outcome of one check."""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(description="Dotted check name, e.g. 'bessel.g_min'")
    passed: bool = Field(description="Whether the check held")
    measured: Dict[str, Any] = Field(default_factory=dict, description="Measured values")


class ClaimReport(BaseModel):
    """Full battery outcome."""
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(description="Battery seed")
    p_list: List[int] = Field(description="Primes exercised")
    grid_list: List[int] = Field(description="Grid sizes exercised")
    passed: bool = Field(description="True iff every check passed")
    checks: List[CheckResult] = Field(default_factory=list, description="Individual checks")

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def validate_primes(p_list: List[int]) -> None:
    """
    Raises:
        InfeasibleDomain: an entry is not an odd prime
    """
    for p in p_list:
        if p == 2 or not is_prime(p):
            raise InfeasibleDomain(f"p_list entries must be odd primes, got {p}", p=p)


class ClaimVerifier:
    """
    Runs the battery.

    Args:
        p_list: Odd primes
        grid_list: Integer grid sizes
        seed: Root seed
        threads: Worker threads for the counters and searches
        settings: Configuration; defaults to the process settings
    """

    def __init__(
        self,
        p_list: Optional[List[int]] = None,
        grid_list: Optional[List[int]] = None,
        seed: int = 0,
        threads: int = 1,
        settings: Optional[CornerLabConfig] = None,
    ):
        self.settings = settings or get_settings()
        verify = self.settings.verify
        self.p_list = list(p_list if p_list is not None else verify.p_list)
        self.grid_list = list(grid_list if grid_list is not None else verify.grid_list)
        validate_primes(self.p_list)
        validate_primes(verify.katz_tao_primes)
        for p in verify.katz_tao_primes:
            if p % 4 != 3:
                raise InfeasibleDomain(f"katz_tao_primes entries must be 3 mod 4, got {p}", p=p)
        for n in self.grid_list:
            if n < 1:
                raise InfeasibleDomain(f"grid sizes must be positive, got {n}", n=n)
        self.seed = seed
        self.threads = threads
        self.checks: List[CheckResult] = []
        self.log = StructuredLogger(__name__, {"seed": seed, "threads": threads})

    def rng(self, name: str) -> np.random.Generator:
        """Generator keyed by the battery seed and the check name."""
        return make_rng(self.seed * (1 << 32) + zlib.crc32(name.encode("utf-8")))

    def record(self, name: str, passed: bool, **measured: Any) -> None:
        self.checks.append(CheckResult(name=name, passed=bool(passed), measured=measured))
        if passed:
            self.log.debug("Check passed", check=name)
        else:
            self.log.warning("Check failed", check=name, **measured)

    def random_set(self, domain: Domain, rng: np.random.Generator) -> PointSet:
        return PointSet(domain, rng.random(domain.num_points) < rng.random())

    # grid_core

    def check_grid_core(self, p: int) -> None:
        domain = Domain.prime_plane(p)
        rng = self.rng(f"grid_core.{p}")
        inverses_ok = True
        rotations_ok = True
        for _ in range(200):
            re, im = (int(v) for v in rng.integers(0, p, size=2))
            z = GaussianElem(re, im, p)
            if z.is_invertible():
                inverses_ok &= z * z.inverse() == GaussianElem.one(p)
            v = GridPoint(re, im)
            turned = v
            for _ in range(4):
                turned = domain.rot90(turned)
            rotations_ok &= turned == v
        sample = self.random_set(domain, rng)
        hex_ok = PointSet.from_hex(domain, sample.to_hex()) == sample
        self.record(
            f"grid_core.arithmetic[{p}]",
            inverses_ok and rotations_ok and hex_ok,
            inverses=inverses_ok,
            rotations=rotations_ok,
            hex=hex_ok,
        )

    def check_gaussian_identities(self, p: int) -> None:
        domain = Domain.prime_plane(p)
        rng = self.rng(f"gaussian.{p}")
        samples = self.settings.verify.gaussian_samples
        apex_failures = 0
        fourth_failures = 0
        for _ in range(samples):
            ax, ay, vx, vy = (int(v) for v in rng.integers(0, p, size=4))
            if vx == 0 and vy == 0:
                vx = 1
            alpha = GridPoint(ax, ay)
            beta = domain.add(alpha, GridPoint(vx, vy))
            gamma = domain.add(alpha, domain.rot90(domain.sub(alpha, beta)))
            if apex(beta, gamma, domain) != alpha:
                apex_failures += 1
            if gaussian_fourth_vertex(beta, gamma, domain) != fourth_vertex(alpha, beta, gamma, domain):
                fourth_failures += 1
        self.record(
            f"gaussian.identities[{p}]",
            apex_failures == 0 and fourth_failures == 0,
            samples=samples,
            apex_failures=apex_failures,
            fourth_vertex_failures=fourth_failures,
        )

    # configs

    def check_counting(self, p: int) -> None:
        domain = Domain.prime_plane(p)
        rng = self.rng(f"counting.{p}")
        spec = PatternSpec.create([IDENTITY, ROT90, SQUARE_DIAGONAL], p, name="square")
        if p == 3:
            sets = [PointSet.from_indices(domain, [i for i in range(9) if code >> i & 1]) for code in range(512)]
        elif p <= self.settings.verify.exhaustive_max_p:
            # every corner triple and square quadruple appears as a whole set
            sets = [
                PointSet.from_indices(domain, combo)
                for size in range(5)
                for combo in combinations(range(domain.num_points), size)
            ]
        else:
            sets = [self.random_set(domain, rng) for _ in range(self.settings.verify.random_sets)]

        mismatches = 0
        for points in sets:
            corners = count_corners(points, threads=self.threads)
            squares = count_squares(points, threads=self.threads)
            pattern = count_matrix_pattern(points, spec, threads=self.threads)
            if corners != naive_pattern_count(points, CORNER_MAPS):
                mismatches += 1
            elif squares != naive_pattern_count(points, SQUARE_MAPS) or pattern != squares:
                mismatches += 1
        full = PointSet.full(domain)
        full_corners = count_corners(full, threads=self.threads)
        self.record(
            f"configs.counting[{p}]",
            mismatches == 0 and full_corners == p * p * (p * p - 1),
            sets=len(sets),
            mismatches=mismatches,
            full_plane_corners=full_corners,
        )

    def check_decomposition(self, p: int) -> None:
        domain = Domain.prime_plane(p)
        rng = self.rng(f"decomposition.{p}")
        samples = self.settings.verify.decomposition_samples
        identity_failures = 0
        single_failures = 0
        for _ in range(samples):
            decomposition = decompose_sigma(self.random_set(domain, rng), threads=self.threads)
            identity_failures += not decomposition.identity_holds
            single_failures += not decomposition.single_f_vanish
        self.record(
            f"configs.decomposition[{p}]",
            identity_failures == 0 and single_failures == 0,
            samples=samples,
            identity_failures=identity_failures,
            single_f_failures=single_failures,
        )

    def check_uniform_cover(self, p: int) -> None:
        cases = [("corner", [IDENTITY, ROT90])]
        if p == 3:
            cases.append(("square", [IDENTITY, ROT90, SQUARE_DIAGONAL]))
        for name, matrices in cases:
            spec = PatternSpec.create(matrices, p, name=name)
            report = uniform_cover_check(spec, p)
            expected = p ** (2 * (spec.k - 2))
            self.record(
                f"configs.uniform_cover[{name},{p}]",
                report.uniform and report.surjective and report.fiber_size == expected,
                **report.to_dict(),
            )

    # saturation

    def check_vertical_lines(self) -> None:
        limit = self.settings.verify.saturation_max_p
        failures: List[int] = []
        primes = [p for p in range(3, limit + 1) if is_prime(p)]
        for p in primes:
            report = check_saturated(vertical_line_set(p), SaturationKind.CORNER)
            if not report.is_saturated or corner_sat_lower_bound(p) > p:
                failures.append(p)
        self.record(
            "saturation.vertical_line",
            not failures,
            primes=len(primes),
            max_p=primes[-1] if primes else None,
            failures=failures,
        )

    def check_exact_saturation(self) -> None:
        result = min_saturated_search(Domain.prime_plane(3), SaturationKind.CORNER, SearchMode.EXACT, seed=self.seed)
        self.record(
            "saturation.exact[3]",
            result.best_size == 3 and result.status is SearchStatus.PROVED_OPTIMAL,
            best_size=result.best_size,
            status=result.status.value,
            lower_bound=corner_sat_lower_bound(3),
        )

    def katz_tao_primes(self) -> List[int]:
        """Primes 3 mod 4 from p_list plus the configured extras, ascending."""
        return sorted({p for p in self.p_list if p % 4 == 3} | set(self.settings.verify.katz_tao_primes))

    def check_katz_tao(self, domain: Domain, kind: SaturationKind) -> None:
        points = greedy_saturated(domain, kind, self.rng(f"katz_tao.{domain.label}"))
        report = katz_tao_probe(points)
        saturation = check_saturated(points, kind)
        recount = int(np.count_nonzero(covered_mask(points, SaturationKind.SQUARE_COVER) & ~points.bits))
        self.record(
            f"saturation.katz_tao[{domain.label}]",
            report.sumset_in_2S and report.covered == recount and saturation.is_saturated,
            recount=recount,
            **report.to_dict(),
        )

    # extremal

    def check_extremal_grid(self, n: int) -> None:
        domain = Domain.integer_grid(n)
        mode = ExtremalMode.EXACT if n <= EXACT_GRID_MAX else ExtremalMode.HEURISTIC
        record = max_config_free(domain, ExtremalKind.CORNER, mode, seed=self.seed, threads=self.threads)
        self.record(
            f"extremal.corner_free[{n}]",
            is_config_free(record.example_set, ExtremalKind.CORNER) and (mode is ExtremalMode.HEURISTIC or record.proved),
            max_size_found=record.max_size_found,
            proved=record.proved,
        )

    # ramsey

    def check_mono_audit(self, p: int) -> None:
        batch = mono_audit_batch(p, seed=self.seed, threads=self.threads)
        coloring = Coloring.random(Domain.prime_plane(p), 2, seed=self.seed)
        counts = mono_corner_counts(coloring, threads=self.threads)
        swapped = mono_corner_counts(coloring.swap(), threads=self.threads)
        symmetric = (counts.sigma_r, counts.sigma_b) == (swapped.sigma_b, swapped.sigma_r)
        # a negative margin is data, not a failure
        self.record(f"ramsey.mono_audit[{p}]", symmetric, swap_symmetric=symmetric, **batch.to_dict())

    # analysis

    def check_bessel(self) -> None:
        analysis = self.settings.analysis
        result = minimize_g()
        deviation = abs(result.g_min - analysis.reference_g_min)
        self.record(
            "bessel.g_min",
            deviation <= analysis.reference_tolerance and result.audit_ok and result.tail_ok,
            g_min=result.g_min,
            reference=analysis.reference_g_min,
            deviation=deviation,
            t_star=result.t_star,
            audit_min=result.audit_min,
            tail_ok=result.tail_ok,
        )
        bound = measure_lower_bound(result.g_min)
        self.record(
            "bessel.measure_lower_bound",
            bound >= PUBLISHED_MEASURE_BOUND and abs(bound - REFERENCE_MEASURE_BOUND) <= MEASURE_TOLERANCE,
            value=bound,
            reference=REFERENCE_MEASURE_BOUND,
        )

    def run(self) -> ClaimReport:
        """Run every check and build the report."""
        self.log.info("Starting claim verification", p_list=self.p_list, grid_list=self.grid_list)
        self.checks = []
        for p in self.p_list:
            self.check_grid_core(p)
            self.check_gaussian_identities(p)
            self.check_counting(p)
            self.check_decomposition(p)
            self.check_uniform_cover(p)
            if p in MONO_AUDIT_PRIMES:
                self.check_mono_audit(p)
        for p in self.katz_tao_primes():
            self.check_katz_tao(Domain.prime_plane(p), SaturationKind.SQUARE)
        self.check_vertical_lines()
        self.check_exact_saturation()
        for n in self.grid_list:
            self.check_extremal_grid(n)
            self.check_katz_tao(Domain.integer_grid(n), SaturationKind.SQUARE_COVER)
        self.check_bessel()

        report = ClaimReport(
            seed=self.seed,
            p_list=self.p_list,
            grid_list=self.grid_list,
            passed=all(c.passed for c in self.checks),
            checks=self.checks,
        )
        self.log.info(
            "Claim verification finished",
            checks=len(report.checks),
            failures=len(report.failures()),
        )
        return report


def verify_claims(
    p_list: Optional[List[int]] = None,
    grid_list: Optional[List[int]] = None,
    seed: int = 0,
    threads: int = 1,
) -> ClaimReport:
    """Run the battery with the process settings."""
    return ClaimVerifier(p_list, grid_list, seed, threads).run()
