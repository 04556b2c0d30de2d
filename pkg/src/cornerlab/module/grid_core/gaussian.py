"""
Gaussian elements a + bi.

With a modulus p these are elements of F_p[x]/(x^2 + 1), a field when
p ≡ 3 (mod 4) and a ring with zero divisors when p ≡ 1 (mod 4). Without a
modulus they are Gaussian integers, used on integer grids. Multiplication by
i is rotation by 90 degrees on the (re, im) pair.
"""

from dataclasses import dataclass
from typing import Optional

from cornerlab.errors import DomainMismatch, NonInvertible
from .domain import Domain, GridPoint


@dataclass(frozen=True)
class GaussianElem:
    """An element re + im*i, reduced mod p when p is set."""
    re: int
    im: int
    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p is not None:
            object.__setattr__(self, "re", self.re % self.p)
            object.__setattr__(self, "im", self.im % self.p)

    @classmethod
    def one(cls, p: Optional[int] = None) -> "GaussianElem":
        return cls(1, 0, p)

    @classmethod
    def i(cls, p: Optional[int] = None) -> "GaussianElem":
        return cls(0, 1, p)

    @classmethod
    def from_point(cls, point: GridPoint, domain: Domain) -> "GaussianElem":
        return cls(point[0], point[1], domain.modulus)

    def to_point(self) -> GridPoint:
        return GridPoint(self.re, self.im)

    def _check(self, other: "GaussianElem") -> None:
        if self.p != other.p:
            raise DomainMismatch("Gaussian elements over different moduli", left=self.p, right=other.p)

    def __add__(self, other: "GaussianElem") -> "GaussianElem":
        self._check(other)
        return GaussianElem(self.re + other.re, self.im + other.im, self.p)

    def __sub__(self, other: "GaussianElem") -> "GaussianElem":
        self._check(other)
        return GaussianElem(self.re - other.re, self.im - other.im, self.p)

    def __neg__(self) -> "GaussianElem":
        return GaussianElem(-self.re, -self.im, self.p)

    def __mul__(self, other: "GaussianElem") -> "GaussianElem":
        self._check(other)
        return GaussianElem(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.p,
        )

    def scale(self, k: int) -> "GaussianElem":
        return GaussianElem(k * self.re, k * self.im, self.p)

    def norm(self) -> int:
        n = self.re * self.re + self.im * self.im
        return n % self.p if self.p is not None else n

    def conjugate(self) -> "GaussianElem":
        return GaussianElem(self.re, -self.im, self.p)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_invertible(self) -> bool:
        if self.p is None:
            return self.norm() == 1
        return self.norm() != 0

    def inverse(self) -> "GaussianElem":
        """
        Multiplicative inverse, conj(a) / N(a).

        Raises:
            NonInvertible: the norm is zero mod p (or, over the Gaussian
                integers, the element is not a unit)
        """
        n = self.norm()
        if self.p is None:
            if n != 1:
                raise NonInvertible(f"{self} is not a unit of Z[i]", element=str(self))
            return self.conjugate()
        if n == 0:
            raise NonInvertible(f"{self} has zero norm mod {self.p}", element=str(self), p=self.p)
        return self.conjugate().scale(pow(n, -1, self.p))

    def divide_exact(self, other: "GaussianElem") -> Optional["GaussianElem"]:
        """
        Exact quotient self / other, or None when it does not exist.

        Over F_p this is multiplication by the inverse; over Z[i] the
        quotient must have integer parts.
        """
        self._check(other)
        if self.p is not None:
            return self * other.inverse()
        n = other.norm()
        if n == 0:
            raise NonInvertible("division by zero in Z[i]")
        num = self * other.conjugate()
        if num.re % n or num.im % n:
            return None
        return GaussianElem(num.re // n, num.im // n)

    def __str__(self) -> str:
        suffix = f" (mod {self.p})" if self.p is not None else ""
        return f"{self.re}+{self.im}i{suffix}"


def gaussian_mul(a: GaussianElem, b: GaussianElem) -> GaussianElem:
    """Ring product (ac - bd) + (ad + bc)i."""
    return a * b


def gaussian_inv(a: GaussianElem) -> GaussianElem:
    """Inverse of a; raises NonInvertible when re^2 + im^2 ≡ 0 (mod p)."""
    return a.inverse()


def unit_group(p: int) -> list:
    """All invertible elements of F_p[i], ordered by (re, im)."""
    return [
        GaussianElem(re, im, p)
        for re in range(p)
        for im in range(p)
        if (re * re + im * im) % p != 0
    ]
