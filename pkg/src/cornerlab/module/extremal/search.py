"""
Largest configuration-free sets.

Exact mode runs a branch-and-bound over include/exclude decisions in
row-major order, bounded by the number of still-addable points. In a prime
plane the set is translated to contain (0, 0) first; for corners and squares
a Gaussian unit then moves a second member to the least point of its orbit.
Heuristic mode is a tabu local search: add a free point when one exists,
otherwise force in a point by evicting the members it would complete a
configuration with and keep them tabu for a fixed tenure. Restarts run
independently and are reduced by size, then by the lexicographically
smallest bitset.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from cornerlab.config import get_settings
from cornerlab.errors import BudgetExhausted, CornerLabError, InfeasibleDomain
from cornerlab.module.configs import (
    ConfigHypergraph,
    ConfigShape,
    CoverageTracker,
    HypergraphState,
    PatternSpec,
    count_corners,
    count_matrix_pattern,
    count_squares,
)
from cornerlab.module.grid_core import Domain, PointSet, spawn_rngs
from cornerlab.module.saturation import is_corner_free, orbit_representatives
from cornerlab.utils.logging import StructuredLogger


class ExtremalKind(Enum):
    """Configuration families for extremal search."""
    CORNER = "corner"
    AXIS_CORNER = "axis_corner"
    SQUARE = "square"
    MATRIX_PATTERN = "matrix_pattern"


class ExtremalMode(Enum):
    """Extremal search engines."""
    EXACT = "exact"
    HEURISTIC = "heuristic"


@dataclass
class ExtremalRecord:
    """Largest configuration-free set found on a domain."""
    domain: Domain
    kind: ExtremalKind
    max_size_found: int
    proved: bool
    example_set: PointSet
    mode: ExtremalMode
    nodes_explored: int = 0
    wall_time: float = 0.0
    spec: Optional[PatternSpec] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def density(self) -> Fraction:
        return Fraction(self.max_size_found, self.domain.num_points)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        """Convert to dictionary."""
        data = {
            "domain": self.domain.to_dict(),
            "kind": self.kind.value,
            "mode": self.mode.value,
            "max_size_found": self.max_size_found,
            "proved": self.proved,
            "witness": self.example_set.to_hex(),
            "density": str(self.density),
            "nodes_explored": self.nodes_explored,
            "spec": self.spec.to_dict() if self.spec else None,
            "metadata": self.metadata,
        }
        if include_timing:
            data["wall_time"] = self.wall_time
        return data


def is_config_free(points: PointSet, kind: ExtremalKind, spec: Optional[PatternSpec] = None) -> bool:
    """Configuration-freeness through the exact counters (pairwise check for axis corners)."""
    if kind is ExtremalKind.CORNER:
        return count_corners(points) == 0
    if kind is ExtremalKind.SQUARE:
        return count_squares(points) == 0
    if kind is ExtremalKind.AXIS_CORNER:
        return is_corner_free(points, axis_parallel=True)
    if spec is None:
        raise ValueError("a matrix pattern search needs a PatternSpec")
    return count_matrix_pattern(points, spec) == 0


Tracker = Union[CoverageTracker, HypergraphState]


class ExtremalSearch:
    """
    Search for a largest configuration-free set.

    Args:
        domain: Universe
        kind: Configuration family
        spec: Matrices for MATRIX_PATTERN
        threads: Worker threads for restarts
        seed: Seed of the restart streams
        symmetry: Canonize the exact search under translations and Gaussian units
    """

    def __init__(
        self,
        domain: Domain,
        kind: ExtremalKind = ExtremalKind.CORNER,
        spec: Optional[PatternSpec] = None,
        threads: int = 1,
        seed: int = 0,
        symmetry: bool = True,
    ):
        if kind is ExtremalKind.MATRIX_PATTERN and spec is None:
            raise ValueError("a matrix pattern search needs a PatternSpec")
        self.domain = domain
        self.kind = kind
        self.spec = spec
        self.threads = max(1, threads)
        self.seed = seed
        self.symmetry = symmetry
        self._graph: Optional[ConfigHypergraph] = None
        self.log = StructuredLogger(__name__, {"domain": domain.label, "kind": kind.value, "seed": seed})

    @property
    def graph(self) -> ConfigHypergraph:
        if self._graph is None:
            if self.kind is ExtremalKind.MATRIX_PATTERN:
                self._graph = ConfigHypergraph.build(self.domain, spec=self.spec)
            else:
                self._graph = ConfigHypergraph.build(self.domain, ConfigShape(self.kind.value))
        return self._graph

    def tracker(self) -> Tracker:
        """Incremental state: completion lookups for fixed shapes, the hypergraph for patterns."""
        if self.kind is ExtremalKind.MATRIX_PATTERN:
            return HypergraphState(self.graph)
        return CoverageTracker(
            self.domain,
            squares=self.kind is ExtremalKind.SQUARE,
            axis_parallel=self.kind is ExtremalKind.AXIS_CORNER,
        )

    # Heuristic

    def tabu_run(self, rng: np.random.Generator, moves: int, tenure: int) -> PointSet:
        """One tabu local-search restart."""
        domain = self.domain
        state = self.tracker()
        tabu_until = np.zeros(domain.num_points, dtype=np.int64)
        best = state.snapshot()

        for move in range(moves):
            free = state.uncovered_outside()
            free = free[tabu_until[free] <= move]
            if len(free):
                v = int(free[rng.integers(len(free))])
                state.add(domain.point(v))
            else:
                outside = np.flatnonzero(~state.bits & (tabu_until <= move))
                if len(outside) == 0:
                    break
                fewest = outside[state.cover[outside] == state.cover[outside].min()]
                v = int(fewest[rng.integers(len(fewest))])
                for u in state.blockers(domain.point(v)):
                    state.remove(u)
                    tabu_until[domain.index(u)] = move + tenure
                state.add(domain.point(v))
            if len(state) > best.cardinality:
                best = state.snapshot()
        return best

    def heuristic(self, restarts: int, moves: int, tenure: int) -> Tuple[PointSet, List[int]]:
        rngs = spawn_rngs(self.seed, restarts)

        def run(rng: np.random.Generator) -> PointSet:
            return self.tabu_run(rng, moves, tenure)

        if self.threads > 1 and restarts > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(run, rngs))
        else:
            results = [run(rng) for rng in rngs]
        best = min(results, key=lambda s: (-s.cardinality, s.sort_key()))
        return best, [s.cardinality for s in results]

    # Exact

    def _roots(self) -> List[Tuple[np.ndarray, np.ndarray, int]]:
        """
        Root nodes (bits, cover, next index).

        Every nonempty set translates to one containing (0, 0). Corners and
        squares are also preserved by multiplication with an invertible
        Gaussian element, so a set with two or more points can be scaled to
        contain an orbit representative as well.
        """
        n_points = self.domain.num_points
        bits = np.zeros(n_points, dtype=bool)
        cover = np.zeros(n_points, dtype=np.int64)
        if not (self.symmetry and self.domain.is_prime_plane):
            return [(bits, cover, 0)]
        self.graph.add(bits, cover, 0)
        if self.kind not in (ExtremalKind.CORNER, ExtremalKind.SQUARE):
            return [(bits, cover, 1)]

        roots = []
        for rep in orbit_representatives(self.domain):
            rep_bits, rep_cover = bits.copy(), cover.copy()
            self.graph.add(rep_bits, rep_cover, rep)
            roots.append((rep_bits, rep_cover, 1))
        # pushed in reverse so the least representative is explored first
        return roots[::-1]

    def branch_and_bound(self, incumbent: PointSet, budget: int) -> Tuple[PointSet, int, bool]:
        """
        Exhaustive search for a set larger than the incumbent.

        Returns:
            (best set, nodes explored, True if the budget ran out)
        """
        graph = self.graph
        n_points = self.domain.num_points
        best_bits = incumbent.bits.copy()
        best_size = incumbent.cardinality
        nodes = 0
        stack = self._roots()
        while stack:
            if nodes >= budget:
                return PointSet(self.domain, best_bits), nodes, True
            nodes += 1
            bits, cover, i = stack.pop()
            size = int(np.count_nonzero(bits))
            if size > best_size:
                best_size = size
                best_bits = bits.copy()
                self.log.info("Incumbent improved", size=size, nodes=nodes)
            if i >= n_points:
                continue
            addable = int(np.count_nonzero(~bits[i:] & (cover[i:] == 0)))
            if size + addable <= best_size:
                continue
            stack.append((bits, cover, i + 1))
            if cover[i] == 0 and not bits[i]:
                new_bits, new_cover = bits.copy(), cover.copy()
                graph.add(new_bits, new_cover, i)
                stack.append((new_bits, new_cover, i + 1))
        return PointSet(self.domain, best_bits), nodes, False

    def run(
        self,
        mode: ExtremalMode = ExtremalMode.HEURISTIC,
        budget: Optional[int] = None,
        restarts: Optional[int] = None,
        strict: bool = False,
    ) -> ExtremalRecord:
        """
        Run one extremal search.

        Args:
            mode: EXACT or HEURISTIC
            budget: Node budget (EXACT) or moves per restart (HEURISTIC)
            restarts: Tabu restarts; defaults from settings
            strict: Raise BudgetExhausted if the exact search cannot finish

        Returns:
            ExtremalRecord with a verified configuration-free witness
        """
        settings = get_settings().search
        start = time.perf_counter()
        n_points = self.domain.num_points
        metadata: Dict[str, Any] = {"threads": self.threads, "symmetry": self.symmetry}
        log = self.log.with_context(mode=mode.value)

        if mode is ExtremalMode.EXACT:
            if n_points > settings.branch_bound_max_points or (
                n_points > settings.exact_max_points and not self.domain.is_prime_plane
            ):
                raise InfeasibleDomain(
                    f"exact extremal search is limited to {settings.exact_max_points} points "
                    f"({settings.branch_bound_max_points} in prime planes), "
                    f"{self.domain.label} has {n_points}",
                    domain=self.domain.label,
                )
            incumbent, _ = self.heuristic(
                min(2, restarts or settings.heuristic_restarts),
                settings.moves_per_point * n_points,
                settings.tabu_tenure,
            )
            best, nodes, exhausted = self.branch_and_bound(incumbent, budget or settings.node_budget)
            proved = not exhausted
            if exhausted:
                log.warning("BudgetExhausted: maximum not proved", nodes=nodes, best=best.cardinality)
                if strict:
                    raise BudgetExhausted(
                        "node budget ran out before the maximum was proved",
                        nodes=nodes,
                        best_size=best.cardinality,
                    )
        else:
            moves = budget or settings.moves_per_point * n_points
            count = restarts or settings.heuristic_restarts
            best, sizes = self.heuristic(count, moves, settings.tabu_tenure)
            nodes = moves * count
            proved = False
            metadata["restart_sizes"] = sizes

        if not is_config_free(best, self.kind, self.spec):
            raise CornerLabError("extremal search produced a set containing a configuration")

        record = ExtremalRecord(
            domain=self.domain,
            kind=self.kind,
            max_size_found=best.cardinality,
            proved=proved,
            example_set=best,
            mode=mode,
            nodes_explored=nodes,
            wall_time=time.perf_counter() - start,
            spec=self.spec,
            metadata=metadata,
        )
        log.info("Extremal search finished", max_found=record.max_size_found, proved=proved, nodes=nodes)
        return record


def max_config_free(
    domain: Domain,
    kind: ExtremalKind = ExtremalKind.CORNER,
    mode: ExtremalMode = ExtremalMode.HEURISTIC,
    budget: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
    spec: Optional[PatternSpec] = None,
    restarts: Optional[int] = None,
    symmetry: bool = True,
    strict: bool = False,
) -> ExtremalRecord:
    """
    Find a largest set with no configuration of the given kind.

    Args:
        domain: Universe
        kind: CORNER (tilted), AXIS_CORNER, SQUARE or MATRIX_PATTERN
        mode: EXACT (branch-and-bound) or HEURISTIC (tabu)
        budget: Node budget, or moves per restart
        seed: Seed of the restart streams
        threads: Worker threads
        spec: Pattern for MATRIX_PATTERN
        restarts: Tabu restarts
        symmetry: Canonize the exact search in prime planes
        strict: Raise BudgetExhausted instead of returning proved=False

    Returns:
        ExtremalRecord; proved is True only when the exact search finished
    """
    search = ExtremalSearch(domain, kind, spec, threads, seed, symmetry)
    return search.run(mode, budget, restarts, strict)
