"""
Configurations as hyperedges.

Every configuration of a domain (tilted corner, axis-parallel corner, square,
or a general matrix pattern) is enumerated once as a sorted row of point
indices. Rows are padded with the index num_points, a sentinel that always
counts as present, so patterns whose points can coincide still fit one
array. The cover count of a point t is the number of edges containing t whose
other points all lie in the current set.
"""

from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cornerlab.module.grid_core import Domain, GridPoint, PointSet
from .counting import CORNER_MAPS, SQUARE_MAPS, point_coords, target_indices, y_range
from .patterns import Matrix, PatternSpec


class ConfigShape(Enum):
    """Configuration families with a fixed map list."""
    CORNER = "corner"
    AXIS_CORNER = "axis_corner"
    SQUARE = "square"


def _axis_corner_edges(domain: Domain) -> np.ndarray:
    n = domain.size
    coords = point_coords(domain)
    if domain.is_prime_plane:
        ds = np.arange(1, n)
    else:
        ds = np.concatenate([np.arange(-(n - 1), 0), np.arange(1, n)])
    shifts_x = np.stack([ds, np.zeros_like(ds)], axis=-1)
    shifts_y = np.stack([np.zeros_like(ds), ds], axis=-1)
    base = np.repeat(np.arange(domain.num_points)[:, None], len(ds), axis=1)
    return np.stack(
        [
            base,
            target_indices(domain, coords, shifts_x),
            target_indices(domain, coords, shifts_y),
        ],
        axis=-1,
    ).reshape(-1, 3)


def _pattern_edges(domain: Domain, maps: Sequence[Matrix]) -> np.ndarray:
    yy = y_range(domain, include_degenerate=False)
    coords = point_coords(domain)
    columns = [np.repeat(np.arange(domain.num_points)[:, None], len(yy), axis=1)]
    for m in maps:
        shifts = yy @ np.array(m, dtype=np.int64).T
        columns.append(target_indices(domain, coords, shifts))
    return np.stack(columns, axis=-1).reshape(-1, len(maps) + 1)


def _canonical_rows(rows: np.ndarray, sentinel: int) -> np.ndarray:
    """Drop rows leaving the grid, dedupe points within rows, then rows."""
    rows = rows[(rows != sentinel).all(axis=1)]
    rows = np.sort(rows, axis=1)
    dup = np.zeros_like(rows, dtype=bool)
    dup[:, 1:] = rows[:, 1:] == rows[:, :-1]
    rows = np.where(dup, sentinel, rows)
    rows = np.sort(rows, axis=1)
    if len(rows) == 0:
        return rows.reshape(0, rows.shape[1])
    return np.unique(rows, axis=0)


class ConfigHypergraph:
    """
    All configurations of one family in one domain.

    Args:
        domain: Universe
        edges: (m, width) array of sorted point indices padded with num_points
        name: Family label for logs and reports
    """

    def __init__(self, domain: Domain, edges: np.ndarray, name: str):
        self.domain = domain
        self.edges = edges
        self.name = name
        self.sentinel = domain.num_points
        self.width = edges.shape[1]

        flat = edges.ravel()
        rows = np.repeat(np.arange(len(edges)), self.width)
        valid = flat != self.sentinel
        flat, rows = flat[valid], rows[valid]
        order = np.argsort(flat, kind="stable")
        flat, rows = flat[order], rows[order]
        bounds = np.searchsorted(flat, np.arange(domain.num_points + 1))
        self._incident = [rows[bounds[v]:bounds[v + 1]] for v in range(domain.num_points)]

    @classmethod
    def build(
        cls,
        domain: Domain,
        shape: ConfigShape = ConfigShape.CORNER,
        spec: Optional[PatternSpec] = None,
    ) -> "ConfigHypergraph":
        """
        Enumerate a configuration family.

        Args:
            domain: Universe
            shape: Fixed family, ignored when spec is given
            spec: Matrix pattern x, x + M_1 y, ..., x + M_k y
        """
        if spec is not None:
            if spec.modulus != domain.modulus:
                spec = PatternSpec.create(spec.matrices, domain.modulus, spec.name)
            raw = _pattern_edges(domain, spec.matrices)
            name = spec.name
        elif shape is ConfigShape.AXIS_CORNER:
            raw = _axis_corner_edges(domain)
            name = shape.value
        else:
            maps = CORNER_MAPS if shape is ConfigShape.CORNER else SQUARE_MAPS
            raw = _pattern_edges(domain, maps)
            name = shape.value
        return cls(domain, _canonical_rows(raw, domain.num_points), name)

    def __len__(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> np.ndarray:
        """Edges containing point v."""
        return self.edges[self._incident[v]]

    def _extended(self, bits: np.ndarray) -> np.ndarray:
        return np.append(bits, True)

    def cover_counts(self, bits: np.ndarray) -> np.ndarray:
        """Cover count of every point for the set given by bits."""
        cover = np.zeros(self.domain.num_points, dtype=np.int64)
        if len(self.edges) == 0:
            return cover
        present = self._extended(bits)[self.edges]
        others = present.sum(axis=1)[:, None] - present
        mask = (self.edges != self.sentinel) & (others == self.width - 1)
        np.add.at(cover, self.edges[mask], 1)
        return cover

    def _update(self, bits: np.ndarray, cover: np.ndarray, v: int, delta: int) -> None:
        rows = self.incident(v)
        if len(rows) == 0:
            return
        present = self._extended(bits)[rows]
        present[rows == v] = False
        others = present.sum(axis=1)[:, None] - present
        mask = (rows != v) & (rows != self.sentinel) & (others == self.width - 2)
        np.add.at(cover, rows[mask], delta)

    def add(self, bits: np.ndarray, cover: np.ndarray, v: int) -> None:
        """Insert v into bits, updating cover in place."""
        self._update(bits, cover, v, +1)
        bits[v] = True

    def remove(self, bits: np.ndarray, cover: np.ndarray, v: int) -> None:
        """Remove v from bits, updating cover in place."""
        bits[v] = False
        self._update(bits, cover, v, -1)

    def find_config(self, bits: np.ndarray) -> Optional[Tuple[GridPoint, ...]]:
        """A configuration contained in the set, or None."""
        if len(self.edges) == 0:
            return None
        full = self._extended(bits)[self.edges].all(axis=1)
        hits = np.flatnonzero(full)
        if len(hits) == 0:
            return None
        row = self.edges[hits[0]]
        return tuple(self.domain.point(int(i)) for i in row if i != self.sentinel)

    def is_config_free(self, bits: np.ndarray) -> bool:
        return self.find_config(bits) is None

    def is_saturated(self, bits: np.ndarray) -> bool:
        if not self.is_config_free(bits):
            return False
        cover = self.cover_counts(bits)
        return bool(np.all(cover[~bits] > 0))

    def blockers(self, bits: np.ndarray, v: int) -> List[int]:
        """Members that, together with v, form a configuration."""
        rows = self.incident(v)
        present = self._extended(bits)[rows]
        present[rows == v] = True
        blocking = rows[present.all(axis=1)]
        members = {int(i) for i in blocking.ravel() if i != v and i != self.sentinel}
        return sorted(members)


class HypergraphState:
    """
    A mutable set with cover counts, driven by a ConfigHypergraph.

    Exposes the same interface as CoverageTracker.
    """

    def __init__(self, graph: ConfigHypergraph):
        self.graph = graph
        self.domain = graph.domain
        self.bits = np.zeros(graph.domain.num_points, dtype=bool)
        self.cover = np.zeros(graph.domain.num_points, dtype=np.int64)

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def add(self, point: GridPoint) -> bool:
        v = self.domain.index(point)
        if self.bits[v]:
            return False
        self.graph.add(self.bits, self.cover, v)
        return True

    def remove(self, point: GridPoint) -> bool:
        v = self.domain.index(point)
        if not self.bits[v]:
            return False
        self.graph.remove(self.bits, self.cover, v)
        return True

    def would_complete(self, point: GridPoint) -> bool:
        return self.cover[self.domain.index(point)] > 0

    def blockers(self, point: GridPoint) -> List[GridPoint]:
        v = self.domain.index(point)
        return [self.domain.point(i) for i in self.graph.blockers(self.bits, v)]

    def uncovered_outside(self) -> np.ndarray:
        return np.flatnonzero(~self.bits & (self.cover == 0))

    def snapshot(self) -> PointSet:
        return PointSet(self.domain, self.bits)
