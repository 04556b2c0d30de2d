"""
Domains and point arithmetic.

A Domain is the finite universe every other object lives in: the prime plane
F_p x F_p or the integer grid [n] x [n]. Points and vectors share one type,
GridPoint; in a prime plane all coordinate arithmetic is mod p, in an integer
grid vectors are signed and only final points are checked against [0, n).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple, Optional

from cornerlab.errors import DomainMismatch, InfeasibleDomain


class DomainKind(Enum):
    """Kinds of universe."""
    PRIME_PLANE = "prime_plane"
    INTEGER_GRID = "integer_grid"


class GridPoint(NamedTuple):
    """A point, or a vector between points."""
    x: int
    y: int


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Domain:
    """
    Finite universe of points.

    Attributes:
        kind: Prime plane or integer grid
        size: p for a prime plane, n for an integer grid
    """
    kind: DomainKind
    size: int

    def __post_init__(self) -> None:
        if self.kind is DomainKind.PRIME_PLANE:
            if self.size == 2:
                raise InfeasibleDomain("p = 2 is not supported: 2 must be invertible", p=self.size)
            if not is_prime(self.size):
                raise InfeasibleDomain(f"{self.size} is not an odd prime", p=self.size)
        elif self.size < 1:
            raise InfeasibleDomain(f"grid size must be at least 1, got {self.size}", n=self.size)

    @classmethod
    def prime_plane(cls, p: int) -> "Domain":
        """Create the plane F_p x F_p."""
        return cls(DomainKind.PRIME_PLANE, p)

    @classmethod
    def integer_grid(cls, n: int) -> "Domain":
        """Create the grid [n] x [n]."""
        return cls(DomainKind.INTEGER_GRID, n)

    @property
    def is_prime_plane(self) -> bool:
        return self.kind is DomainKind.PRIME_PLANE

    @property
    def p(self) -> int:
        """The modulus; only meaningful for prime planes."""
        self.require_prime_plane("modulus")
        return self.size

    @property
    def p_mod_4(self) -> Optional[int]:
        return self.size % 4 if self.is_prime_plane else None

    @property
    def modulus(self) -> Optional[int]:
        return self.size if self.is_prime_plane else None

    @property
    def num_points(self) -> int:
        return self.size * self.size

    def require_prime_plane(self, operation: str) -> None:
        if not self.is_prime_plane:
            raise DomainMismatch(f"{operation} requires a prime plane", domain=self.label)

    @property
    def label(self) -> str:
        prefix = "p" if self.is_prime_plane else "n"
        return f"{prefix}{self.size}"

    # Coordinates and vectors

    def reduce(self, v: GridPoint) -> GridPoint:
        """Reduce a vector into canonical coordinates (mod p in a prime plane)."""
        if self.is_prime_plane:
            return GridPoint(v[0] % self.size, v[1] % self.size)
        return GridPoint(v[0], v[1])

    def contains(self, point: GridPoint) -> bool:
        """True if the (already reduced) point lies in the domain."""
        return 0 <= point[0] < self.size and 0 <= point[1] < self.size

    def add(self, a: GridPoint, b: GridPoint) -> GridPoint:
        return self.reduce(GridPoint(a[0] + b[0], a[1] + b[1]))

    def sub(self, a: GridPoint, b: GridPoint) -> GridPoint:
        return self.reduce(GridPoint(a[0] - b[0], a[1] - b[1]))

    def scale(self, k: int, v: GridPoint) -> GridPoint:
        return self.reduce(GridPoint(k * v[0], k * v[1]))

    def rot90(self, v: GridPoint) -> GridPoint:
        return self.reduce(GridPoint(-v[1], v[0]))

    def half(self, v: GridPoint) -> Optional[GridPoint]:
        """
        Halve a vector.

        In a prime plane this multiplies by the inverse of 2; on the integer
        grid it returns None unless both coordinates are even.
        """
        if self.is_prime_plane:
            inv2 = (self.size + 1) // 2
            return self.reduce(GridPoint(v[0] * inv2, v[1] * inv2))
        if v[0] % 2 or v[1] % 2:
            return None
        return GridPoint(v[0] // 2, v[1] // 2)

    def inverse_mod(self, k: int) -> int:
        """Inverse of k in F_p."""
        self.require_prime_plane("field inverse")
        return pow(k % self.size, -1, self.size)

    # Indexing (row-major: index = x * size + y)

    def index(self, point: GridPoint) -> int:
        return point[0] * self.size + point[1]

    def point(self, index: int) -> GridPoint:
        return GridPoint(*divmod(index, self.size))

    def points(self) -> Iterator[GridPoint]:
        """All points in row-major order."""
        for x in range(self.size):
            for y in range(self.size):
                yield GridPoint(x, y)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"kind": self.kind.value, "size": self.size}

    @classmethod
    def from_dict(cls, data: dict) -> "Domain":
        """Create from dictionary."""
        return cls(DomainKind(data["kind"]), int(data["size"]))


def rot90(v: GridPoint, domain: Domain) -> GridPoint:
    """
    Rotate a vector by 90 degrees: (y1, y2) -> (-y2, y1).

    On the integer grid the result is a signed vector and is not
    domain-checked.
    """
    return domain.rot90(v)


def norm(v: GridPoint, domain: Domain) -> int:
    """Squared length v1^2 + v2^2 mod p."""
    domain.require_prime_plane("norm")
    return (v[0] * v[0] + v[1] * v[1]) % domain.size
