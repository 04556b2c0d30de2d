"""
Bessel J0 numerics.

This module evaluates the zeroth Bessel function with the Cephes rational
approximations (peak absolute error about 4e-16), minimizes
g(t) = 2 J0(t) + J0(sqrt(2) t) over t >= 0, and turns the minimum into the
lower bound 1/4 + g_min/4 on the measure of monochromatic configurations.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from cornerlab.config import get_settings
from cornerlab.errors import OutOfRange
from cornerlab.utils.logging import get_logger

logger = get_logger(__name__)

J0_MAX_ARGUMENT = 200.0
SQRT2 = math.sqrt(2.0)
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

SQ2OPI = 7.9788456080286535587989e-1  # sqrt(2/pi)
PIO4 = 7.85398163397448309616e-1  # pi/4

# Zeros of J0 squared
DR1 = 5.78318596294678452118e0
DR2 = 3.04712623436620863991e1

RP = np.array([
    -4.79443220978201773821e9,
    1.95617491946556577543e12,
    -2.49248344360967716204e14,
    9.70862251047306323952e15,
])
# leading coefficient 1 is implicit
RQ = np.array([
    4.99563147152651017219e2,
    1.73785401676374683123e5,
    4.84409658339962045305e7,
    1.11855537045356834862e10,
    2.11277520115489217587e12,
    3.10518229857422583814e14,
    3.18121955943204943306e16,
    1.71086294081043136091e18,
])

PP = np.array([
    7.96936729297347051624e-4,
    8.28352392107440799803e-2,
    1.23953371646414299388e0,
    5.44725003058768775090e0,
    8.74716500199817011941e0,
    5.30324038235394892183e0,
    9.99999999999999997821e-1,
])
PQ = np.array([
    9.24408810558863637013e-4,
    8.56288474354474431428e-2,
    1.25352743901058953537e0,
    5.47097740330417105182e0,
    8.76190883237069594232e0,
    5.30605288235394617618e0,
    1.00000000000000000218e0,
])
QP = np.array([
    -1.13663838898469149931e-2,
    -1.28252718670509318512e0,
    -1.95539544257735972385e1,
    -9.32060152123768231369e1,
    -1.77681167980488050595e2,
    -1.47077505154951170175e2,
    -5.14105326766599330220e1,
    -6.05014350600728481186e0,
])
# leading coefficient 1 is implicit
QQ = np.array([
    6.43178256118178023184e1,
    8.56430025976980587198e2,
    3.88240183605401609683e3,
    7.24046774195652478189e3,
    5.93072701187316984827e3,
    2.06209331660327847417e3,
    2.42005740240291393179e2,
])

ArrayLike = Union[float, np.ndarray]


def polevl(x: np.ndarray, coef: np.ndarray) -> np.ndarray:
    """Horner evaluation of coef[0] x^N + ... + coef[N]."""
    ans = np.full_like(x, coef[0])
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def p1evl(x: np.ndarray, coef: np.ndarray) -> np.ndarray:
    """Horner evaluation of x^N + coef[0] x^(N-1) + ... + coef[N-1]."""
    ans = x + coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def bessel_j0(t: ArrayLike) -> ArrayLike:
    """
    Zeroth Bessel function of the first kind.

    Uses 1 - t^2/4 below 1e-5, a rational approximation in t^2 on [1e-5, 5]
    and the Hankel asymptotic form beyond 5.

    Args:
        t: Scalar or array with values in [0, 200]

    Returns:
        J0(t), with the shape of the input

    Raises:
        OutOfRange: any value outside [0, 200] or not finite
    """
    x = np.asarray(t, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    bad = ~np.isfinite(x) | (x < 0.0) | (x > J0_MAX_ARGUMENT)
    if bad.any():
        raise OutOfRange(
            f"J0 is evaluated on [0, {J0_MAX_ARGUMENT:g}] only",
            value=float(x[bad][0]),
        )

    ans = np.empty_like(x)

    tiny = x < 1e-5
    ans[tiny] = 1.0 - x[tiny] * x[tiny] / 4.0

    small = ~tiny & (x <= 5.0)
    z = x[small] * x[small]
    ans[small] = (z - DR1) * (z - DR2) * polevl(z, RP) / p1evl(z, RQ)

    large = x > 5.0
    xx = x[large]
    w = 5.0 / xx
    q = 25.0 / (xx * xx)
    p = polevl(q, PP) / polevl(q, PQ)
    q = polevl(q, QP) / p1evl(q, QQ)
    xn = xx - PIO4
    ans[large] = SQ2OPI * (p * np.cos(xn) - w * q * np.sin(xn)) / np.sqrt(xx)

    return float(ans[0]) if scalar else ans


def g(t: ArrayLike) -> ArrayLike:
    """g(t) = 2 J0(t) + J0(sqrt(2) t)."""
    x = np.asarray(t, dtype=np.float64)
    value = 2.0 * np.asarray(bessel_j0(x)) + np.asarray(bessel_j0(SQRT2 * x))
    return float(value) if value.ndim == 0 else value


def decay_envelope(t: float) -> float:
    """Asymptotic bound 2 sqrt(2/(pi t)) + sqrt(2/(pi sqrt(2) t)) on |g(t)|."""
    return 2.0 * math.sqrt(2.0 / (math.pi * t)) + math.sqrt(2.0 / (math.pi * SQRT2 * t))


def golden_section(lo: float, hi: float, tol: float) -> Tuple[float, float]:
    """
    Minimize g on [lo, hi] by golden-section search.

    Returns:
        (t, g(t)) at the final midpoint
    """
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + GOLDEN * (b - a)
            gd = g(d)
    t = (a + b) / 2.0
    return t, float(g(t))


@dataclass
class MinimizationResult:
    """Global minimum of g on [0, T] with its audit."""
    t_star: float
    g_min: float
    bracket: Tuple[float, float]
    tolerance: float
    search_limit: float
    basins: int
    audit_min: float
    audit_points: int
    tail_max_abs: float
    tail_envelope: float
    tail_ok: bool

    @property
    def audit_ok(self) -> bool:
        return self.audit_min >= self.g_min - self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "t_star": self.t_star,
            "g_min": self.g_min,
            "bracket": list(self.bracket),
            "tolerance": self.tolerance,
            "search_limit": self.search_limit,
            "basins": self.basins,
            "audit_min": self.audit_min,
            "audit_points": self.audit_points,
            "audit_ok": self.audit_ok,
            "tail_max_abs": self.tail_max_abs,
            "tail_envelope": self.tail_envelope,
            "tail_ok": self.tail_ok,
        }


def _local_minima(values: np.ndarray) -> List[int]:
    inner = np.flatnonzero((values[1:-1] <= values[:-2]) & (values[1:-1] <= values[2:])) + 1
    return inner.tolist()


def minimize_g(
    search_limit: Optional[float] = None,
    tol: Optional[float] = None,
    scan_step: Optional[float] = None,
    audit_points: Optional[int] = None,
    extended_limit: Optional[float] = None,
) -> MinimizationResult:
    """
    Global minimum of g(t) = 2 J0(t) + J0(sqrt(2) t) on [0, T].

    A dense scan locates every local basin; each is refined by golden-section
    search and the smallest refined value wins. The result is then audited on
    a uniform grid over [0, T] and the tail (T, extended_limit] is checked
    against the decay envelope. Defaults come from the analysis settings.
    """
    settings = get_settings().analysis
    T = settings.search_limit if search_limit is None else search_limit
    tol = settings.tolerance if tol is None else tol
    step = settings.scan_step if scan_step is None else scan_step
    audit_points = settings.audit_points if audit_points is None else audit_points
    extended = settings.extended_limit if extended_limit is None else extended_limit
    if SQRT2 * max(T, extended) > J0_MAX_ARGUMENT:
        raise OutOfRange("search interval exceeds the J0 evaluation range", search_limit=T, extended_limit=extended)

    count = int(math.ceil(T / step)) + 1
    ts = np.linspace(0.0, T, count)
    values = g(ts)

    best: Optional[Tuple[float, float, Tuple[float, float]]] = None
    minima = _local_minima(values)
    for i in minima:
        bracket = (float(ts[i - 1]), float(ts[i + 1]))
        t, value = golden_section(bracket[0], bracket[1], tol)
        if best is None or value < best[1]:
            best = (t, value, bracket)
    # an endpoint minimum has no interior basin
    for i in (0, count - 1):
        if best is None or values[i] < best[1]:
            best = (float(ts[i]), float(values[i]), (float(ts[i]), float(ts[i])))
    assert best is not None
    t_star, g_min, bracket = best

    audit_min = float(g(np.linspace(0.0, T, audit_points)).min())
    tail = g(np.linspace(T, extended, max(2, int(math.ceil((extended - T) / step)) + 1)))
    tail_max_abs = float(np.abs(tail).max()) if extended > T else 0.0
    envelope = decay_envelope(T)
    tail_ok = tail_max_abs < 0.5 and envelope < abs(g_min) and float(tail.min()) >= g_min - tol

    result = MinimizationResult(
        t_star=t_star,
        g_min=g_min,
        bracket=bracket,
        tolerance=tol,
        search_limit=T,
        basins=len(minima),
        audit_min=audit_min,
        audit_points=audit_points,
        tail_max_abs=tail_max_abs,
        tail_envelope=envelope,
        tail_ok=tail_ok,
    )
    logger.info(f"g minimum {g_min:.12f} at t = {t_star:.10f} over {len(minima)} basins")
    if not result.audit_ok:
        logger.warning(f"Audit grid found {audit_min:.12f} below the refined minimum")
    if not tail_ok:
        logger.warning(f"Tail check failed: max |g| = {tail_max_abs:.4f} beyond t = {T}")
    return result


def measure_lower_bound(g_min: Optional[float] = None) -> float:
    """1/4 + g_min/4, computing g_min when not given."""
    if g_min is None:
        g_min = minimize_g().g_min
    return 0.25 + 0.25 * g_min
