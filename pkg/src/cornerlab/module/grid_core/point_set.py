"""
Dense bitset point sets.

A PointSet is a subset of a Domain stored as a boolean array of length
size^2 in row-major order (index = x * size + y). Membership, insertion and
removal are O(1); the cardinality is cached and kept equal to the population
count. Bitsets serialize as lowercase hex of the row-major bit array, most
significant bit first, ceil(size^2 / 4) digits.
"""

from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Union

import numpy as np

from cornerlab.errors import DomainMismatch
from .domain import Domain, GridPoint
from .gaussian import GaussianElem
from .sampling import make_rng


class PointSet:
    """Subset of a domain. Single writer; safe to share read-only."""

    __slots__ = ("domain", "bits", "_cardinality")

    def __init__(self, domain: Domain, bits: Optional[np.ndarray] = None):
        self.domain = domain
        if bits is None:
            self.bits = np.zeros(domain.num_points, dtype=bool)
        else:
            bits = np.asarray(bits, dtype=bool).reshape(-1)
            if bits.size != domain.num_points:
                raise DomainMismatch(
                    f"bit array of length {bits.size} does not fit {domain.label}",
                    expected=domain.num_points,
                )
            self.bits = bits.copy()
        self._cardinality = int(np.count_nonzero(self.bits))

    @classmethod
    def empty(cls, domain: Domain) -> "PointSet":
        return cls(domain)

    @classmethod
    def full(cls, domain: Domain) -> "PointSet":
        return cls(domain, np.ones(domain.num_points, dtype=bool))

    @classmethod
    def from_points(cls, domain: Domain, points: Iterable[GridPoint]) -> "PointSet":
        result = cls(domain)
        for point in points:
            result.add(domain.reduce(GridPoint(*point)))
        return result

    @classmethod
    def from_indices(cls, domain: Domain, indices: Iterable[int]) -> "PointSet":
        result = cls(domain)
        idx = np.fromiter(indices, dtype=np.int64)
        result.bits[idx] = True
        result._cardinality = int(np.count_nonzero(result.bits))
        return result

    # Membership

    def _checked_index(self, point: GridPoint) -> int:
        if not self.domain.contains(point):
            raise DomainMismatch(f"point {tuple(point)} lies outside {self.domain.label}")
        return self.domain.index(point)

    def __contains__(self, point: GridPoint) -> bool:
        if not self.domain.contains(point):
            return False
        return bool(self.bits[self.domain.index(point)])

    def contains_index(self, index: int) -> bool:
        return bool(self.bits[index])

    def add(self, point: GridPoint) -> bool:
        """Insert a point; returns True if the set changed."""
        index = self._checked_index(point)
        if self.bits[index]:
            return False
        self.bits[index] = True
        self._cardinality += 1
        return True

    def remove(self, point: GridPoint) -> bool:
        """Remove a point; returns True if the set changed."""
        index = self._checked_index(point)
        if not self.bits[index]:
            return False
        self.bits[index] = False
        self._cardinality -= 1
        return True

    @property
    def cardinality(self) -> int:
        return self._cardinality

    def __len__(self) -> int:
        return self._cardinality

    def recount(self) -> int:
        """Population count computed from scratch."""
        return int(np.count_nonzero(self.bits))

    def __iter__(self) -> Iterator[GridPoint]:
        for index in np.flatnonzero(self.bits):
            yield self.domain.point(int(index))

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def to_list(self) -> List[GridPoint]:
        return list(self)

    def grid(self) -> np.ndarray:
        """Boolean (size, size) view indexed [x, y]."""
        return self.bits.reshape(self.domain.size, self.domain.size)

    def copy(self) -> "PointSet":
        return PointSet(self.domain, self.bits)

    def complement(self) -> "PointSet":
        return PointSet(self.domain, ~self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.domain == other.domain and bool(np.array_equal(self.bits, other.bits))

    def __repr__(self) -> str:
        return f"PointSet({self.domain.label}, size={self._cardinality})"

    # Transformations

    def translate(self, v: GridPoint) -> "PointSet":
        """Translate every point by v (prime planes wrap; grids drop nothing and must fit)."""
        return PointSet.from_points(self.domain, (self.domain.add(q, v) for q in self))

    def multiply(self, g: GaussianElem) -> "PointSet":
        """Multiply every point, read as a Gaussian element, by g (prime planes)."""
        self.domain.require_prime_plane("Gaussian scaling")
        return PointSet.from_points(
            self.domain,
            ((GaussianElem.from_point(q, self.domain) * g).to_point() for q in self),
        )

    # Serialization

    def to_hex(self) -> str:
        digits = -(-self.domain.num_points // 4)
        packed = np.packbits(self.bits.astype(np.uint8))
        return packed.tobytes().hex()[:digits]

    @classmethod
    def from_hex(cls, domain: Domain, text: str) -> "PointSet":
        digits = -(-domain.num_points // 4)
        text = text.strip().lower()
        if len(text) != digits:
            raise ValueError(f"expected {digits} hex digits for {domain.label}, got {len(text)}")
        raw = bytes.fromhex(text + "0" * (len(text) % 2))
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8)).astype(bool)
        if bits[domain.num_points:].any():
            raise ValueError("padding bits beyond the domain are set")
        return cls(domain, bits[: domain.num_points])

    def sort_key(self) -> str:
        """Lexicographic tie-break key."""
        return self.to_hex()


def random_subset(
    domain: Domain,
    density: Union[Fraction, float, int, str],
    seed: int,
) -> PointSet:
    """
    Deterministic pseudo-random subset.

    Each point is kept independently with probability density, drawn as
    rng.integers(0, q) < r for density = r/q so densities 0 and 1 are exact.

    Args:
        domain: Universe to sample from
        density: Rational in [0, 1]
        seed: PCG64 seed

    Returns:
        The sampled set; the same seed always gives the same set
    """
    rate = Fraction(density)
    if not 0 <= rate <= 1:
        raise ValueError(f"density must lie in [0, 1], got {rate}")
    rng = make_rng(seed)
    draws = rng.integers(0, rate.denominator, size=domain.num_points)
    return PointSet(domain, draws < rate.numerator)
