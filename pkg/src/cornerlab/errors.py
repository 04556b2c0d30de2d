"""
Exception hierarchy for CornerLab.

Every precondition failure raised by the library derives from CornerLabError,
so callers (the CLI in particular) can map whole families to exit codes.
"""

from typing import Any, Dict, Optional


class CornerLabError(Exception):
    """Base class for all CornerLab errors."""

    exit_code: int = 2

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "context": {k: str(v) for k, v in self.context.items()},
        }


class InfeasibleDomain(CornerLabError):
    """Domain parameters are invalid (p not an odd prime, n < 1)."""


class DomainMismatch(CornerLabError):
    """Operation called on a domain of the wrong kind or with mixed domains."""


class NonInvertible(CornerLabError):
    """Gaussian element with zero norm has no inverse."""


class DegenerateInput(CornerLabError):
    """Points are not pairwise distinct."""


class NotACorner(CornerLabError):
    """The triple is not an isosceles right triangle with the stated right angle."""


class InvalidPattern(CornerLabError):
    """A pattern matrix is singular or duplicated."""


class WrongResidue(CornerLabError):
    """Operation needs p ≡ 3 (mod 4)."""


class BudgetExhausted(CornerLabError):
    """A search ran out of its node budget before the tree was exhausted."""

    exit_code = 1


class WrongColorCount(CornerLabError):
    """Coloring has the wrong number of colors for the audit."""


class NotQuadraticResidue(CornerLabError):
    """The norm ratio a/b is not a quadratic residue mod p."""


class ZeroInput(CornerLabError):
    """Zero passed where a nonzero field element is required."""


class OutOfRange(CornerLabError):
    """Numeric argument outside the supported range."""


class CheckpointError(CornerLabError):
    """Search checkpoint is missing, corrupt, or from another version."""

    exit_code = 3


class ColoringFormatError(CornerLabError):
    """Coloring file violates the documented JSON format."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field: Optional[str] = None,
        **context: Any,
    ):
        super().__init__(message, line=line, field=field, **context)
        self.line = line
        self.field = field

    def __str__(self) -> str:
        location = []
        if self.line is not None:
            location.append(f"line {self.line}")
        if self.field is not None:
            location.append(f"field '{self.field}'")
        if location:
            return f"{self.message} ({', '.join(location)})"
        return self.message


class UsageError(CornerLabError):
    """Command-line arguments are inconsistent."""
