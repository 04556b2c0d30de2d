"""
Minimum saturated set search.

Three engines look for the smallest saturated set of a domain:

- Exact: sweeps subsets by increasing size (domains of at most 25 points).
- BranchBound: depth-first include/exclude search over points in row-major
  order. Only points not yet covered may join the set, so every partial set
  stays configuration-free. A node is pruned when even the most productive
  additions cannot cover the remaining points (each new pair completes at
  most six corners, each new triple at most one square) without growing
  past the incumbent. Ties with the incumbent are still explored and the
  least bitset among the smallest sets wins, so a finished search returns
  the same set for every thread count.
- Greedy: adds points in a random order whenever that creates no
  configuration; the resulting maximal free set is saturated.

Searches never raise on budget exhaustion; the result is marked BestFound and
the unexplored frontier can be written to a checkpoint and resumed.
"""

import threading
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, islice
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cornerlab.config import get_settings
from cornerlab.errors import BudgetExhausted, CheckpointError, CornerLabError, InfeasibleDomain
from cornerlab.module.configs import ConfigHypergraph, ConfigShape, CoverageTracker
from cornerlab.module.grid_core import Domain, GaussianElem, PointSet, spawn_rngs, unit_group
from cornerlab.utils.logging import StructuredLogger
from .bounds import COMPLETIONS_PER_PAIR, vertical_line_set
from .checkpoint import FrontierNode, SearchCheckpoint, SweepPosition, load_checkpoint, save_checkpoint
from .checks import SaturationKind, check_saturated

# Greedy restarts used to seed the incumbent of an exact search
INCUMBENT_RESTARTS = 10


class SearchMode(Enum):
    """Search engines."""
    EXACT = "exact"
    BRANCH_BOUND = "branch_bound"
    GREEDY = "greedy"


class SearchStatus(Enum):
    """Outcome of a search."""
    PROVED_OPTIMAL = "ProvedOptimal"
    BEST_FOUND = "BestFound"


@dataclass
class SearchResult:
    """Best saturated set found by a search."""
    best_set: PointSet
    best_size: int
    status: SearchStatus
    nodes_explored: int
    wall_time: float
    kind: SaturationKind
    mode: SearchMode
    seed: int
    lower_bound: int
    budget_exhausted: bool = False
    axis_parallel: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        """Convert to dictionary."""
        data = {
            "domain": self.best_set.domain.to_dict(),
            "kind": self.kind.value,
            "mode": self.mode.value,
            "axis_parallel": self.axis_parallel,
            "seed": self.seed,
            "best_size": self.best_size,
            "best_set": self.best_set.to_hex(),
            "status": self.status.value,
            "lower_bound": self.lower_bound,
            "budget_exhausted": self.budget_exhausted,
            "nodes_explored": self.nodes_explored,
            "metadata": self.metadata,
        }
        if include_timing:
            data["wall_time"] = self.wall_time
        return data


def _capacity(width: int, size: int, extra: int) -> int:
    """Most outside points that extra new points can newly cover."""
    if width == 3:
        new_pairs = extra * size + extra * (extra - 1) // 2
        return COMPLETIONS_PER_PAIR * new_pairs
    return comb(size + extra, 3) - comb(size, 3)


def additional_points_needed(uncovered: int, size: int, width: int) -> int:
    """Smallest k such that k more points could cover (or absorb) the uncovered points."""
    extra = 0
    while uncovered > extra + _capacity(width, size, extra):
        extra += 1
    return extra


def saturation_lower_bound(domain: Domain, kind: SaturationKind) -> int:
    """Counting lower bound on the size of any saturated set."""
    width = 4 if kind.uses_squares else 3
    return additional_points_needed(domain.num_points, 0, width)


def hypergraph_for(domain: Domain, kind: SaturationKind, axis_parallel: bool = False) -> ConfigHypergraph:
    if kind.uses_squares:
        return ConfigHypergraph.build(domain, ConfigShape.SQUARE)
    shape = ConfigShape.AXIS_CORNER if axis_parallel else ConfigShape.CORNER
    return ConfigHypergraph.build(domain, shape)


def orbit_representatives(domain: Domain) -> List[int]:
    """Least index of each orbit of nonzero points under Gaussian unit scaling."""
    p = domain.p
    units = unit_group(p)
    assigned = np.zeros(domain.num_points, dtype=bool)
    assigned[0] = True
    reps = []
    for index in range(1, domain.num_points):
        if assigned[index]:
            continue
        reps.append(index)
        r = GaussianElem.from_point(domain.point(index), domain)
        for g in units:
            assigned[domain.index((g * r).to_point())] = True
    return reps


def greedy_saturated(
    domain: Domain,
    kind: SaturationKind,
    rng: np.random.Generator,
    axis_parallel: bool = False,
) -> PointSet:
    """
    A maximal configuration-free set built in random order.

    Points are visited in a random permutation; the first few act as a random
    seed set and every later point joins unless it would complete a
    configuration. Maximality makes the result saturated.
    """
    tracker = CoverageTracker(domain, squares=kind.uses_squares, axis_parallel=axis_parallel)
    for index in rng.permutation(domain.num_points):
        point = domain.point(int(index))
        if not tracker.would_complete(point):
            tracker.add(point)
    return tracker.snapshot()


def _bits_key(bits: np.ndarray) -> bytes:
    """Byte string ordering bitsets like PointSet.sort_key."""
    return np.packbits(bits.astype(np.uint8)).tobytes()


class _SharedState:
    """Incumbent and node counter shared by branch-and-bound workers."""

    def __init__(self, best_bits: np.ndarray, budget: int, nodes: int = 0):
        self.lock = threading.Lock()
        self.best_bits = best_bits.copy()
        self.best_size = int(np.count_nonzero(best_bits))
        self.best_key = _bits_key(best_bits)
        self.budget = budget
        self.nodes = nodes
        self.exhausted = False

    def tick(self) -> bool:
        with self.lock:
            if self.nodes >= self.budget:
                self.exhausted = True
                return False
            self.nodes += 1
            return True

    def offer(self, bits: np.ndarray) -> bool:
        """Replace the incumbent if bits is smaller, or as small with a lesser bitset."""
        size = int(np.count_nonzero(bits))
        key = _bits_key(bits)
        with self.lock:
            if (size, key) < (self.best_size, self.best_key):
                self.best_size = size
                self.best_key = key
                self.best_bits = bits.copy()
                return True
        return False


Node = Tuple[List[int], int, np.ndarray, np.ndarray]


class SaturationSearch:
    """
    Search for a minimum saturated set.

    Args:
        domain: Universe
        kind: Configuration kind
        axis_parallel: Use axis-parallel corners (CORNER kind only)
        symmetry: Fix root points under translations and Gaussian unit scaling
        threads: Worker threads
        seed: Seed for greedy incumbents and restarts
    """

    def __init__(
        self,
        domain: Domain,
        kind: SaturationKind = SaturationKind.CORNER,
        axis_parallel: bool = False,
        symmetry: bool = True,
        threads: int = 1,
        seed: int = 0,
    ):
        self.domain = domain
        self.kind = kind
        self.axis_parallel = axis_parallel and kind is SaturationKind.CORNER
        self.symmetry = symmetry
        self.threads = max(1, threads)
        self.seed = seed
        self.graph = hypergraph_for(domain, kind, self.axis_parallel)
        self.width = 4 if kind.uses_squares else 3
        self.freeness = kind is not SaturationKind.SQUARE_COVER
        self.lower_bound = saturation_lower_bound(domain, kind)
        self.log = StructuredLogger(
            __name__,
            {"domain": domain.label, "kind": kind.value, "seed": seed},
        )

    # Incumbents

    def greedy(self, restarts: int) -> Tuple[PointSet, List[int]]:
        """Best of several greedy restarts; ties go to the smaller hex."""
        rngs = spawn_rngs(self.seed, restarts)

        def run(rng: np.random.Generator) -> PointSet:
            return greedy_saturated(self.domain, self.kind, rng, self.axis_parallel)

        if self.threads > 1 and restarts > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(run, rngs))
        else:
            results = [run(rng) for rng in rngs]
        best = min(results, key=lambda s: (s.cardinality, s.sort_key()))
        return best, [s.cardinality for s in results]

    def initial_incumbent(self) -> PointSet:
        if self.domain.is_prime_plane and self.kind is SaturationKind.CORNER and not self.axis_parallel:
            return vertical_line_set(self.domain.p)
        best, _ = self.greedy(INCUMBENT_RESTARTS)
        return best

    # Branch and bound

    def _materialize(self, chosen: List[int]) -> Tuple[np.ndarray, np.ndarray]:
        bits = np.zeros(self.domain.num_points, dtype=bool)
        cover = np.zeros(self.domain.num_points, dtype=np.int64)
        for v in chosen:
            self.graph.add(bits, cover, v)
        return bits, cover

    def roots(self) -> List[FrontierNode]:
        """
        Root subtrees.

        In a prime plane every saturated set can be translated to contain
        (0, 0); for similarity-invariant kinds a Gaussian unit then moves a
        second member to the least point of its orbit.
        """
        if not (self.symmetry and self.domain.is_prime_plane):
            return [FrontierNode(chosen=[], next=0)]
        if self.axis_parallel or self.lower_bound < 2:
            return [FrontierNode(chosen=[0], next=0)]
        return [FrontierNode(chosen=[0, rep], next=0) for rep in orbit_representatives(self.domain)]

    def _expand(self, node: Node, shared: _SharedState) -> List[Node]:
        chosen, nxt, bits, cover = node
        size = len(chosen)
        uncovered = int(np.count_nonzero(~bits & (cover == 0)))
        if uncovered == 0:
            if shared.offer(bits):
                self.log.info("Incumbent improved", size=size, nodes=shared.nodes)
            return []
        need = additional_points_needed(uncovered, size, self.width)
        if size + need > shared.best_size:
            return []

        i = nxt
        while i < self.domain.num_points and bits[i]:
            i += 1
        if i >= self.domain.num_points:
            return []

        children: List[Node] = [(chosen, i + 1, bits, cover)]
        if not self.freeness or cover[i] == 0:
            new_bits, new_cover = bits.copy(), cover.copy()
            self.graph.add(new_bits, new_cover, i)
            # pushed last so the include branch is explored first
            children.append((chosen + [i], i + 1, new_bits, new_cover))
        return children

    def _explore(self, root: FrontierNode, shared: _SharedState) -> List[FrontierNode]:
        bits, cover = self._materialize(root.chosen)
        stack: List[Node] = [(list(root.chosen), root.next, bits, cover)]
        while stack:
            if not shared.tick():
                return [FrontierNode(chosen=c, next=n) for c, n, _, _ in stack]
            stack.extend(self._expand(stack.pop(), shared))
        return []

    def _split(self, frontier: List[FrontierNode], shared: _SharedState) -> List[FrontierNode]:
        """Expand breadth-first until there is work for every thread."""
        target = 4 * self.threads
        queue = deque(frontier)
        while queue and len(queue) < target:
            if not shared.tick():
                break
            node = queue.popleft()
            bits, cover = self._materialize(node.chosen)
            for chosen, nxt, _, _ in self._expand((list(node.chosen), node.next, bits, cover), shared):
                queue.append(FrontierNode(chosen=chosen, next=nxt))
        return list(queue)

    def branch_and_bound(
        self,
        frontier: List[FrontierNode],
        incumbent: PointSet,
        budget: int,
        nodes: int = 0,
    ) -> Tuple[_SharedState, List[FrontierNode]]:
        """Explore the frontier; returns the shared state and what is left unexplored."""
        shared = _SharedState(incumbent.bits, nodes + budget, nodes)
        if self.threads > 1:
            frontier = self._split(frontier, shared)

        remaining: List[FrontierNode] = []
        if self.threads > 1 and len(frontier) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                for leftover in pool.map(lambda node: self._explore(node, shared), frontier):
                    remaining.extend(leftover)
        else:
            for node in frontier:
                remaining.extend(self._explore(node, shared))
        return shared, remaining

    # Exact sweep

    def exact_sweep(
        self,
        incumbent: PointSet,
        budget: int,
        start: Optional[SweepPosition] = None,
        nodes: int = 0,
    ) -> Tuple[PointSet, int, Optional[SweepPosition]]:
        """
        Check subsets by increasing size, up to the incumbent size.

        Returns:
            (best set, nodes explored, position reached if the budget ran out)
        """
        n_points = self.domain.num_points
        limit = nodes + budget
        first = start.size if start else 0
        for size in range(first, incumbent.cardinality + 1):
            skip = start.done if start and size == start.size else 0
            done = skip
            for combo in islice(combinations(range(n_points), size), skip, None):
                if nodes >= limit:
                    return incumbent, nodes, SweepPosition(size=size, done=done)
                nodes += 1
                done += 1
                bits = np.zeros(n_points, dtype=bool)
                bits[list(combo)] = True
                if self.graph.is_saturated(bits):
                    self.log.info("Exact sweep found a saturated set", size=size, nodes=nodes)
                    return PointSet(self.domain, bits), nodes, None
        return incumbent, nodes, None

    # Driver

    def _checkpoint(
        self,
        mode: SearchMode,
        best: PointSet,
        nodes: int,
        frontier: List[FrontierNode],
        sweep: Optional[SweepPosition],
    ) -> SearchCheckpoint:
        return SearchCheckpoint(
            domain_kind=self.domain.kind.value,
            domain_size=self.domain.size,
            kind=self.kind.value,
            mode=mode.value,
            axis_parallel=self.axis_parallel,
            symmetry=self.symmetry,
            seed=self.seed,
            best_hex=best.to_hex(),
            best_size=best.cardinality,
            frontier=frontier,
            sweep=sweep,
            nodes_explored=nodes,
        )

    def _resume(self, path: str, mode: SearchMode) -> SearchCheckpoint:
        checkpoint = load_checkpoint(path)
        expected = (self.domain.kind.value, self.domain.size, self.kind.value, mode.value, self.axis_parallel, self.symmetry)
        found = (
            checkpoint.domain_kind,
            checkpoint.domain_size,
            checkpoint.kind,
            checkpoint.mode,
            checkpoint.axis_parallel,
            checkpoint.symmetry,
        )
        if expected != found:
            raise CheckpointError("checkpoint belongs to a different search", expected=expected, found=found)
        return checkpoint

    def run(
        self,
        mode: SearchMode = SearchMode.BRANCH_BOUND,
        budget: Optional[int] = None,
        checkpoint_path: Optional[str] = None,
        resume: bool = False,
        strict: bool = False,
    ) -> SearchResult:
        """
        Run one search.

        Args:
            mode: Engine
            budget: Node budget (restarts for Greedy); defaults from settings
            checkpoint_path: Where to write the frontier if the budget runs out
            resume: Continue from the checkpoint at checkpoint_path
            strict: Raise BudgetExhausted instead of returning a BestFound result

        Returns:
            SearchResult whose set has passed the independent saturation check

        Raises:
            BudgetExhausted: strict is set and the budget ran out (the checkpoint is still written)
        """
        settings = get_settings()
        start = time.perf_counter()
        log = self.log.with_context(mode=mode.value)
        n_points = self.domain.num_points
        exhausted = False
        metadata: Dict[str, Any] = {"symmetry": self.symmetry, "threads": self.threads}

        if mode is SearchMode.EXACT and n_points > settings.search.exact_max_points:
            raise InfeasibleDomain(
                f"exact sweep supports at most {settings.search.exact_max_points} points, "
                f"{self.domain.label} has {n_points}",
                domain=self.domain.label,
            )

        checkpoint = self._resume(checkpoint_path, mode) if resume and checkpoint_path else None
        nodes = checkpoint.nodes_explored if checkpoint else 0

        if mode is SearchMode.GREEDY:
            restarts = budget or settings.search.greedy_restarts
            best, sizes = self.greedy(restarts)
            nodes = restarts
            metadata["restart_sizes"] = sizes
            metadata["min_size"] = min(sizes)
            status = SearchStatus.BEST_FOUND
        else:
            budget = budget or settings.search.node_budget
            if checkpoint is not None and checkpoint.best_hex:
                incumbent = PointSet.from_hex(self.domain, checkpoint.best_hex)
            else:
                incumbent = self.initial_incumbent()
            log.info("Search started", incumbent=incumbent.cardinality, lower_bound=self.lower_bound)

            frontier: List[FrontierNode] = []
            sweep: Optional[SweepPosition] = None
            if mode is SearchMode.EXACT:
                start_at = checkpoint.sweep if checkpoint else None
                best, nodes, sweep = self.exact_sweep(incumbent, budget, start_at, nodes)
                exhausted = sweep is not None
            else:
                roots = checkpoint.frontier if checkpoint else self.roots()
                shared, frontier = self.branch_and_bound(roots, incumbent, budget, nodes)
                best = PointSet(self.domain, shared.best_bits)
                nodes = shared.nodes
                exhausted = shared.exhausted and bool(frontier)

            if exhausted:
                log.warning("BudgetExhausted: returning best found", nodes=nodes, best=best.cardinality)
                if checkpoint_path:
                    save_checkpoint(self._checkpoint(mode, best, nodes, frontier, sweep), checkpoint_path)
                if strict:
                    raise BudgetExhausted(
                        f"node budget {budget} ran out before the search finished",
                        nodes=nodes,
                        best_size=best.cardinality,
                        checkpoint=checkpoint_path,
                    )
            status = SearchStatus.BEST_FOUND if exhausted else SearchStatus.PROVED_OPTIMAL

        report = check_saturated(best, self.kind, self.axis_parallel)
        if not report.is_saturated:
            raise CornerLabError("search produced a set that fails the saturation check", report=report.to_dict())
        if best.cardinality < self.lower_bound:
            raise CornerLabError("search result is below the counting lower bound", size=best.cardinality)

        wall_time = time.perf_counter() - start
        log.info("Search finished", best=best.cardinality, status=status.value, nodes=nodes)
        return SearchResult(
            best_set=best,
            best_size=best.cardinality,
            status=status,
            nodes_explored=nodes,
            wall_time=wall_time,
            kind=self.kind,
            mode=mode,
            seed=self.seed,
            lower_bound=self.lower_bound,
            budget_exhausted=exhausted,
            axis_parallel=self.axis_parallel,
            metadata=metadata,
        )


def min_saturated_search(
    domain: Domain,
    kind: SaturationKind = SaturationKind.CORNER,
    mode: SearchMode = SearchMode.BRANCH_BOUND,
    budget: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
    symmetry: bool = True,
    axis_parallel: bool = False,
    checkpoint_path: Optional[str] = None,
    resume: bool = False,
    strict: bool = False,
) -> SearchResult:
    """
    Find a small (or, when the search is exhausted, minimum) saturated set.

    Args:
        domain: Universe; prime planes need p >= 3
        kind: CORNER, SQUARE or SQUARE_COVER
        mode: EXACT, BRANCH_BOUND or GREEDY
        budget: Node budget, or number of restarts for GREEDY
        seed: Seed for greedy incumbents and restarts
        threads: Worker threads
        symmetry: Root symmetry reduction in prime planes
        axis_parallel: Axis-parallel corners instead of tilted ones
        checkpoint_path: Frontier is saved here when the budget runs out
        resume: Continue from checkpoint_path
        strict: Raise BudgetExhausted when the node budget runs out

    Returns:
        SearchResult
    """
    search = SaturationSearch(domain, kind, axis_parallel, symmetry, threads, seed)
    return search.run(mode, budget, checkpoint_path, resume, strict)
