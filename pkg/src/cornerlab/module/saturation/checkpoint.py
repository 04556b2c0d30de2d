"""
Search checkpoints.

A checkpoint records enough to resume an interrupted search: the domain and
search parameters, the incumbent as a hex bitset, the unexplored frontier of
the branch-and-bound tree (or the position of a subset sweep) and the node
counter. Files are written to a temporary sibling and renamed into place, so
a failed write never leaves a half-written checkpoint behind.
"""

import json
import os
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cornerlab.errors import CheckpointError
from cornerlab.utils.logging import get_logger

logger = get_logger(__name__)

CHECKPOINT_VERSION = 1


class FrontierNode(BaseModel):
    """An unexplored subtree: points fixed in the set and the next decision index."""
    model_config = ConfigDict(extra="forbid")

    chosen: List[int] = Field(description="Row-major indices already in the set")
    next: int = Field(ge=0, description="First index still undecided")


class SweepPosition(BaseModel):
    """Position of a subset sweep."""
    model_config = ConfigDict(extra="forbid")

    size: int = Field(ge=0, description="Subset size being swept")
    done: int = Field(ge=0, description="Subsets of this size already checked")


class SearchCheckpoint(BaseModel):
    """Versioned checkpoint of a minimum-saturated-set search."""
    model_config = ConfigDict(extra="forbid")

    version: int = Field(default=CHECKPOINT_VERSION, description="Checkpoint format version")
    domain_kind: str = Field(description="prime_plane or integer_grid")
    domain_size: int = Field(ge=1, description="p or n")
    kind: str = Field(description="Saturation kind")
    mode: str = Field(description="Search mode")
    axis_parallel: bool = Field(default=False, description="Axis-parallel corners")
    symmetry: bool = Field(default=True, description="Root symmetry reduction in use")
    seed: int = Field(default=0, description="Seed of the run")
    best_hex: Optional[str] = Field(default=None, description="Incumbent as hex bitset")
    best_size: Optional[int] = Field(default=None, description="Incumbent size")
    frontier: List[FrontierNode] = Field(default_factory=list, description="Unexplored subtrees")
    sweep: Optional[SweepPosition] = Field(default=None, description="Subset sweep position")
    nodes_explored: int = Field(default=0, ge=0, description="Nodes explored so far")


def save_checkpoint(checkpoint: SearchCheckpoint, path: str) -> None:
    """Write a checkpoint atomically."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_name(target.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump(checkpoint.model_dump(mode="json"), f, indent=2)
        os.replace(tmp, target)
    except OSError as e:
        if tmp.exists():
            tmp.unlink()
        raise CheckpointError(f"could not write checkpoint: {e}", path=str(target)) from e
    logger.info(f"Checkpoint written to {target} ({len(checkpoint.frontier)} frontier nodes)")


def load_checkpoint(path: str) -> SearchCheckpoint:
    """
    Read and validate a checkpoint.

    Raises:
        CheckpointError: missing, unreadable, corrupt, or of another version
    """
    source = Path(path)
    if not source.exists():
        raise CheckpointError(f"checkpoint not found: {source}", path=str(source))
    try:
        with open(source, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(f"corrupt checkpoint: {e}", path=str(source)) from e
    if not isinstance(data, dict) or data.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"unsupported checkpoint version {data.get('version') if isinstance(data, dict) else None}",
            path=str(source),
        )
    try:
        return SearchCheckpoint(**data)
    except ValidationError as e:
        raise CheckpointError(f"invalid checkpoint: {e.error_count()} field errors", path=str(source)) from e
