"""
Sum and difference sets of the square-cover graph.

For a set S read as Gaussian elements, G collects the ordered pairs
(beta, gamma) of S whose right-angle apex alpha (gamma = alpha + i(alpha - beta))
also lies in S. With a = (1+i) beta and b = (1-i) gamma every sum a + b equals
2 alpha, so the sums sit inside 2S, while a - b = 2i delta where delta is the
fourth vertex of the square on alpha, beta, gamma. The difference set thus
measures how many points S covers as fourth square vertices.

The Katz-Tao bound |{a - b}| <= |S|^(11/6) holds in torsion-free groups; in
F_p[i] the report only gives the measured quantities.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Set, Tuple

from cornerlab.errors import NotACorner, WrongResidue
from cornerlab.module.configs import apex
from cornerlab.module.grid_core import GaussianElem, PointSet
from cornerlab.utils.logging import get_logger

logger = get_logger(__name__)

KATZ_TAO_EXPONENT = 11 / 6
RUZSA_EXPONENT = math.log(6) / math.log(3)


@dataclass
class KatzTaoReport:
    """Measured sizes of the square-cover graph of a set."""
    set_size: int
    covered: int
    G_size: int
    sumset_size: int
    diffset_size: int
    kt_rhs: float
    sumset_in_2S: bool
    torsion_free_caveat: bool
    katz_tao_exponent: float = KATZ_TAO_EXPONENT
    ruzsa_exponent: float = RUZSA_EXPONENT

    @property
    def diff_exponent(self) -> float:
        """log |{a - b}| / log |S|, or 0 when undefined."""
        if self.set_size < 2 or self.diffset_size < 1:
            return 0.0
        return math.log(self.diffset_size) / math.log(self.set_size)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "set_size": self.set_size,
            "covered": self.covered,
            "G_size": self.G_size,
            "sumset_size": self.sumset_size,
            "diffset_size": self.diffset_size,
            "kt_rhs": self.kt_rhs,
            "sumset_in_2S": self.sumset_in_2S,
            "diff_exponent": self.diff_exponent,
            "katz_tao_exponent": self.katz_tao_exponent,
            "ruzsa_exponent": self.ruzsa_exponent,
            "torsion_free_caveat": self.torsion_free_caveat,
        }


def katz_tao_probe(points: PointSet) -> KatzTaoReport:
    """
    Measure G, {a + b} and {a - b} for a point set.

    Args:
        points: A set in a prime plane with p ≡ 3 (mod 4), or in an integer grid

    Returns:
        KatzTaoReport; covered counts fourth vertices inside the domain but
        outside the set

    Raises:
        WrongResidue: prime plane with p ≡ 1 (mod 4)
    """
    domain = points.domain
    if domain.is_prime_plane and domain.p_mod_4 == 1:
        raise WrongResidue(
            f"the sum-difference report needs p ≡ 3 (mod 4), got p = {domain.p}",
            p=domain.p,
        )
    p = domain.modulus
    one_plus_i = GaussianElem(1, 1, p)
    one_minus_i = GaussianElem(1, -1, p)
    members = points.to_list()
    elems = {q: GaussianElem.from_point(q, domain) for q in members}
    doubled = {elems[q].scale(2) for q in members}

    g_size = 0
    sums: Set[Tuple[int, int]] = set()
    diffs: Set[Tuple[int, int]] = set()
    fourth_outside: Set[Tuple[int, int]] = set()
    for beta in members:
        a = one_plus_i * elems[beta]
        for gamma in members:
            if gamma == beta:
                continue
            try:
                alpha = apex(beta, gamma, domain)
            except NotACorner:
                continue
            if alpha not in points:
                continue
            g_size += 1
            b = one_minus_i * elems[gamma]
            total = a + b
            sums.add((total.re, total.im))
            diff = a - b
            diffs.add((diff.re, diff.im))
            delta = domain.sub(domain.add(beta, gamma), alpha)
            if domain.contains(delta) and delta not in points:
                fourth_outside.add(tuple(delta))

    sumset_in_2S = all(GaussianElem(re, im, p) in doubled for re, im in sums)
    report = KatzTaoReport(
        set_size=len(members),
        covered=len(fourth_outside),
        G_size=g_size,
        sumset_size=len(sums),
        diffset_size=len(diffs),
        kt_rhs=len(members) ** KATZ_TAO_EXPONENT,
        sumset_in_2S=sumset_in_2S,
        torsion_free_caveat=domain.is_prime_plane,
    )
    if not sumset_in_2S:
        logger.warning(f"sumset escapes 2S on {domain.label}: {report.to_dict()}")
    return report
