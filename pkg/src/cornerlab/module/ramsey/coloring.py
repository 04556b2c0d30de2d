"""
Colorings of a domain.

A Coloring assigns every point a color in [0, r). Files use the JSON format

    {"p": 7, "r": 2, "colors": [0, 1, ...]}

with colors in row-major order (index = x * size + y); integer grids use "n"
instead of "p". Format violations raise ColoringFormatError with the line and
field at fault.
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cornerlab.errors import ColoringFormatError, DomainMismatch, InfeasibleDomain
from cornerlab.module.grid_core import Domain, GridPoint, PointSet, make_rng


class ColoringFile(BaseModel):
    """On-disk coloring."""
    model_config = ConfigDict(extra="forbid")

    p: Optional[int] = Field(default=None, description="Prime of a prime plane")
    n: Optional[int] = Field(default=None, description="Side of an integer grid")
    r: int = Field(ge=1, description="Number of colors")
    colors: List[int] = Field(description="Row-major color indices in [0, r)")


def _line_of(text: str, key: str) -> Optional[int]:
    position = text.find(f'"{key}"')
    if position < 0:
        return None
    return text.count("\n", 0, position) + 1


class Coloring:
    """
    Total map from a domain to {0, ..., r-1}.

    Args:
        domain: Universe
        colors: Row-major color array of length size^2
        r: Number of colors; defaults to max color + 1
    """

    def __init__(self, domain: Domain, colors: Any, r: Optional[int] = None):
        values = np.asarray(colors, dtype=np.int64).reshape(-1)
        if values.size != domain.num_points:
            raise DomainMismatch(
                f"coloring has {values.size} entries, {domain.label} has {domain.num_points} points"
            )
        if r is None:
            r = int(values.max()) + 1 if values.size else 1
        if r < 1:
            raise ValueError(f"a coloring needs at least one color, got r = {r}")
        if values.size and (values.min() < 0 or values.max() >= r):
            raise ValueError(f"colors must lie in [0, {r})")
        self.domain = domain
        self.colors = values
        self.r = r

    @classmethod
    def uniform(cls, domain: Domain, color: int = 0, r: int = 2) -> "Coloring":
        return cls(domain, np.full(domain.num_points, color, dtype=np.int64), r)

    @classmethod
    def random(cls, domain: Domain, r: int = 2, seed: int = 0) -> "Coloring":
        """Uniformly random coloring from a PCG64 stream."""
        return cls.from_rng(domain, r, make_rng(seed))

    @classmethod
    def from_rng(cls, domain: Domain, r: int, rng: np.random.Generator) -> "Coloring":
        return cls(domain, rng.integers(0, r, size=domain.num_points), r)

    @classmethod
    def checkerboard(cls, domain: Domain) -> "Coloring":
        """Color (x + y) mod 2."""
        idx = np.arange(domain.num_points)
        return cls(domain, (idx // domain.size + idx % domain.size) % 2, 2)

    @classmethod
    def from_classes(cls, red: PointSet) -> "Coloring":
        """Two-coloring with the given set as color 0."""
        return cls(red.domain, np.where(red.bits, 0, 1), 2)

    def __getitem__(self, point: GridPoint) -> int:
        return int(self.colors[self.domain.index(point)])

    def grid(self) -> np.ndarray:
        """(size, size) color array indexed [x, y]."""
        return self.colors.reshape(self.domain.size, self.domain.size)

    def class_set(self, color: int) -> PointSet:
        return PointSet(self.domain, self.colors == color)

    def relabel(self, permutation: List[int]) -> "Coloring":
        """Apply a permutation of the color names."""
        return Coloring(self.domain, np.asarray(permutation, dtype=np.int64)[self.colors], self.r)

    def swap(self) -> "Coloring":
        return self.relabel(list(range(self.r))[::-1])

    def transform(self, mapping: Callable[[GridPoint], GridPoint]) -> "Coloring":
        """Coloring c' with c'(mapping(x)) = c(x); mapping must be a bijection of the domain."""
        colors = np.empty_like(self.colors)
        for index in range(self.domain.num_points):
            target = mapping(self.domain.point(index))
            colors[self.domain.index(target)] = self.colors[index]
        return Coloring(self.domain, colors, self.r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.domain == other.domain and self.r == other.r and bool(np.array_equal(self.colors, other.colors))

    # Serialization

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the file format."""
        key = "p" if self.domain.is_prime_plane else "n"
        return {key: self.domain.size, "r": self.r, "colors": self.colors.tolist()}

    def save(self, path: Union[str, Path]) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f)

    @classmethod
    def from_json(cls, text: str) -> "Coloring":
        """
        Parse the JSON format.

        Raises:
            ColoringFormatError: with the offending line and field
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ColoringFormatError(f"invalid JSON: {e.msg}", line=e.lineno) from e
        if not isinstance(data, dict):
            raise ColoringFormatError("top level must be an object", line=1)

        try:
            parsed = ColoringFile(**data)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or None
            key = str(first["loc"][0]) if first["loc"] else ""
            raise ColoringFormatError(first["msg"], line=_line_of(text, key), field=field) from e

        if (parsed.p is None) == (parsed.n is None):
            raise ColoringFormatError("exactly one of 'p' and 'n' is required", line=1, field="p")
        try:
            domain = Domain.prime_plane(parsed.p) if parsed.p is not None else Domain.integer_grid(parsed.n)
        except InfeasibleDomain as e:
            key = "p" if parsed.p is not None else "n"
            raise ColoringFormatError(e.message, line=_line_of(text, key), field=key) from e

        colors_line = _line_of(text, "colors")
        if len(parsed.colors) != domain.num_points:
            raise ColoringFormatError(
                f"expected {domain.num_points} colors, got {len(parsed.colors)}",
                line=colors_line,
                field="colors",
            )
        for index, value in enumerate(parsed.colors):
            if not 0 <= value < parsed.r:
                raise ColoringFormatError(
                    f"color {value} outside [0, {parsed.r})",
                    line=colors_line,
                    field=f"colors[{index}]",
                )
        return cls(domain, parsed.colors, parsed.r)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Coloring":
        """Read a coloring file."""
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_json(f.read())

    def __repr__(self) -> str:
        return f"Coloring({self.domain.label}, r={self.r})"
