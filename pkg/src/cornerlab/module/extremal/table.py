"""
Density tables.

A batch driver over max_config_free: one row per domain size with the best
size found, whether it is proved maximal, a witness and the density. On
integer grids the best size is nondecreasing in n, since a witness for [n]^2
is still configuration-free inside [n+1]^2; heuristic rows fall back to the
embedded previous witness when the search itself comes up short.
"""

import json
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from cornerlab.config import get_settings
from cornerlab.module.configs import PatternSpec
from cornerlab.module.grid_core import Domain, PointSet
from cornerlab.utils.logging import get_logger
from .search import ExtremalKind, ExtremalMode, ExtremalRecord, max_config_free

logger = get_logger(__name__)


class DensityRow(BaseModel):
    """One row of a density table."""
    model_config = ConfigDict(extra="forbid")

    size: int = Field(ge=1, description="p or n")
    kind: str = Field(description="Configuration kind")
    max_found: int = Field(ge=0, description="Largest configuration-free set found")
    proved: bool = Field(description="True when the exact search finished")
    witness: str = Field(description="Witness set as hex bitset")
    density: float = Field(ge=0.0, le=1.0, description="max_found / size^2")
    domain: str = Field(default="integer_grid", description="prime_plane or integer_grid")
    mode: str = Field(default="heuristic", description="Engine that produced the row")

    @classmethod
    def from_record(cls, record: ExtremalRecord) -> "DensityRow":
        return cls(
            size=record.domain.size,
            kind=record.kind.value,
            max_found=record.max_size_found,
            proved=record.proved,
            witness=record.example_set.to_hex(),
            density=record.max_size_found / record.domain.num_points,
            domain=record.domain.kind.value,
            mode=record.mode.value,
        )


def _exact_feasible(domain: Domain) -> bool:
    search = get_settings().search
    if domain.is_prime_plane:
        return domain.num_points <= search.branch_bound_max_points
    return domain.num_points <= search.exact_max_points


def _embed(points: PointSet, domain: Domain) -> PointSet:
    return PointSet.from_points(domain, points)


def density_table(
    kind: ExtremalKind,
    sizes: Sequence[int],
    mode: ExtremalMode = ExtremalMode.EXACT,
    budget: Optional[int] = None,
    prime_plane: bool = False,
    seed: int = 0,
    threads: int = 1,
    spec: Optional[PatternSpec] = None,
) -> List[DensityRow]:
    """
    Build a density table.

    Args:
        kind: Configuration family
        sizes: Grid sizes n (or primes p with prime_plane)
        mode: EXACT where feasible, otherwise HEURISTIC
        budget: Passed to max_config_free
        prime_plane: Use F_p^2 instead of [n]^2
        seed: Seed of the heuristic restarts
        threads: Worker threads
        spec: Pattern for MATRIX_PATTERN

    Returns:
        One DensityRow per size, in the given order
    """
    rows: List[DensityRow] = []
    previous: Optional[PointSet] = None
    for size in sizes:
        domain = Domain.prime_plane(size) if prime_plane else Domain.integer_grid(size)
        row_mode = mode
        if mode is ExtremalMode.EXACT and not _exact_feasible(domain):
            logger.info(f"{domain.label} is too large for an exact search, using the heuristic")
            row_mode = ExtremalMode.HEURISTIC
        record = max_config_free(domain, kind, row_mode, budget, seed, threads, spec)

        embedded = (
            _embed(previous, domain)
            if previous is not None and not prime_plane and previous.domain.size <= size
            else None
        )
        if embedded is not None and embedded.cardinality > record.max_size_found:
            logger.info(f"{domain.label}: embedded witness of size {embedded.cardinality} beats the search")
            record.example_set = embedded
            record.max_size_found = embedded.cardinality
            record.metadata["embedded_from"] = previous.domain.label

        rows.append(DensityRow.from_record(record))
        previous = record.example_set
    return rows


def write_density_table(rows: List[DensityRow], output_dir: str, stem: str = "density_table") -> List[Path]:
    """Write the table as CSV (pandas) and JSON; returns the written paths."""
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    records = [row.model_dump() for row in rows]

    csv_path = directory / f"{stem}.csv"
    pd.DataFrame(records, columns=list(DensityRow.model_fields)).to_csv(csv_path, index=False)

    json_path = directory / f"{stem}.json"
    with open(json_path, "w", encoding="utf-8") as f:
        json.dump(records, f, indent=2)
    return [csv_path, json_path]
