"""
Matrix patterns x, x + M_1 y, ..., x + M_k y.

A PatternSpec holds k distinct invertible 2x2 matrices. Corners are
[I, R] with R the rotation by 90 degrees, squares add M_3 = [[1,-1],[1,1]].
The uniform cover check materializes the change of variables
x = z_1 + ... + z_k, y = -sum M_j^{-1} z_j and measures its fibers.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cornerlab.errors import InvalidPattern
from cornerlab.module.grid_core import is_prime
from cornerlab.utils.logging import get_logger

logger = get_logger(__name__)

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
ROT90: Matrix = ((0, -1), (1, 0))
SQUARE_DIAGONAL: Matrix = ((1, -1), (1, 1))

# Exhaustive fiber enumeration is used up to this many source tuples
ENUMERATION_LIMIT = 200_000


def _reduce(m: Sequence[Sequence[int]], modulus: Optional[int]) -> Matrix:
    (a, b), (c, d) = m
    if modulus is None:
        return ((int(a), int(b)), (int(c), int(d)))
    return ((a % modulus, b % modulus), (c % modulus, d % modulus))


def det(m: Matrix, modulus: Optional[int] = None) -> int:
    value = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return value % modulus if modulus is not None else value


def mat_inverse_mod(m: Matrix, p: int) -> Matrix:
    """Inverse of a 2x2 matrix over F_p."""
    inv_det = pow(det(m, p), -1, p)
    (a, b), (c, d) = m
    return _reduce(((d * inv_det, -b * inv_det), (-c * inv_det, a * inv_det)), p)


def apply(m: Matrix, v: Tuple[int, int]) -> Tuple[int, int]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


@dataclass(frozen=True)
class PatternSpec:
    """
    Ordered list of k >= 1 distinct invertible 2x2 matrices.

    With a modulus the matrices live over F_p; without one they are integer
    matrices with nonzero determinant (integer-grid patterns).
    """
    matrices: Tuple[Matrix, ...]
    modulus: Optional[int] = None
    name: str = field(default="custom", compare=False)

    @classmethod
    def create(
        cls,
        matrices: Sequence[Sequence[Sequence[int]]],
        modulus: Optional[int] = None,
        name: str = "custom",
    ) -> "PatternSpec":
        """
        Validate and build a pattern.

        Raises:
            InvalidPattern: a matrix is singular, duplicated, or the list is empty
        """
        if modulus is not None and (modulus < 3 or not is_prime(modulus)):
            raise InvalidPattern(f"modulus must be an odd prime, got {modulus}")
        reduced = tuple(_reduce(m, modulus) for m in matrices)
        if not reduced:
            raise InvalidPattern("a pattern needs at least one matrix")
        for index, m in enumerate(reduced):
            if det(m, modulus) == 0:
                raise InvalidPattern(f"matrix {index} is singular", matrix=m, modulus=modulus)
        if len(set(reduced)) != len(reduced):
            raise InvalidPattern("pattern matrices must be pairwise distinct", modulus=modulus)
        return cls(reduced, modulus, name)

    @classmethod
    def corner(cls, modulus: Optional[int] = None) -> "PatternSpec":
        return cls.create([IDENTITY, ROT90], modulus, name="corner")

    @classmethod
    def square(cls, modulus: Optional[int] = None) -> "PatternSpec":
        return cls.create([IDENTITY, ROT90, SQUARE_DIAGONAL], modulus, name="square")

    @property
    def k(self) -> int:
        return len(self.matrices)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "modulus": self.modulus,
            "matrices": [[list(row) for row in m] for m in self.matrices],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PatternSpec":
        """Create from dictionary."""
        return cls.create(data["matrices"], data.get("modulus"), data.get("name", "custom"))


@dataclass
class UniformCoverReport:
    """Fiber structure of the change-of-variables map."""
    surjective: bool
    fiber_size: int
    uniform: bool
    image_size: int
    source_size: int
    target_size: int
    rank: int
    method: str

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return dict(self.__dict__)


def change_of_variables_matrix(spec: PatternSpec, p: int) -> np.ndarray:
    """
    The 2(k+1) x 2k matrix of (z_1..z_k) -> (x, x + M_1 y, ..., x + M_k y).

    Block row 0 is [I ... I]; block row i is [I - M_i M_j^{-1}]_j.
    """
    k = spec.k
    inverses = [np.array(mat_inverse_mod(m, p), dtype=np.int64) for m in spec.matrices]
    mats = [np.array(m, dtype=np.int64) for m in spec.matrices]
    eye = np.eye(2, dtype=np.int64)
    phi = np.zeros((2 * (k + 1), 2 * k), dtype=np.int64)
    for j in range(k):
        phi[0:2, 2 * j:2 * j + 2] = eye
    for i in range(k):
        for j in range(k):
            block = (eye - mats[i] @ inverses[j]) % p
            phi[2 * (i + 1):2 * (i + 2), 2 * j:2 * j + 2] = block
    return phi % p


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by Gaussian elimination."""
    work = [[int(v) % p for v in row] for row in matrix]
    rows, cols = len(work), len(work[0]) if work else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(v * inv) % p for v in work[rank]]
        for r in range(rows):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [(a - factor * b) % p for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


def uniform_cover_check(spec: PatternSpec, p: int, exhaustive: Optional[bool] = None) -> UniformCoverReport:
    """
    Check that the change of variables is a uniform cover.

    The target is the configuration space {(x, x+M_1 y, ..., x+M_k y)},
    of size p^4. Small cases are enumerated exhaustively and fibers counted;
    larger ones fall back to the rank (a linear map has uniform fibers of
    size p^(2k - rank)).

    Args:
        spec: Pattern over F_p
        p: The prime
        exhaustive: Force (or forbid) enumeration; default by size

    Returns:
        UniformCoverReport with measured fiber sizes
    """
    if spec.modulus != p:
        spec = PatternSpec.create(spec.matrices, p, spec.name)
    k = spec.k
    phi = change_of_variables_matrix(spec, p)
    rank = rank_mod_p(phi, p)
    source_size = p ** (2 * k)
    target_size = p ** 4
    if exhaustive is None:
        exhaustive = source_size <= ENUMERATION_LIMIT

    if not exhaustive:
        image_size = p ** rank
        report = UniformCoverReport(
            surjective=image_size == target_size,
            fiber_size=p ** (2 * k - rank),
            uniform=True,
            image_size=image_size,
            source_size=source_size,
            target_size=target_size,
            rank=rank,
            method="rank",
        )
        logger.debug(f"uniform cover by rank: {report.to_dict()}")
        return report

    sources = np.array(list(product(range(p), repeat=2 * k)), dtype=np.int64)
    images = (sources @ phi.T) % p
    weights = p ** np.arange(images.shape[1], dtype=np.int64)
    codes = images @ weights
    _, counts = np.unique(codes, return_counts=True)
    uniform = bool(np.all(counts == counts[0]))
    report = UniformCoverReport(
        surjective=len(counts) == target_size,
        fiber_size=int(counts[0]) if uniform else int(counts.max()),
        uniform=uniform,
        image_size=len(counts),
        source_size=source_size,
        target_size=target_size,
        rank=rank,
        method="enumeration",
    )
    logger.debug(f"uniform cover by enumeration: {report.to_dict()}")
    return report
