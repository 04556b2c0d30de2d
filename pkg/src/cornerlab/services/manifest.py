"""
Run manifests.

Every CLI invocation writes one RunManifest next to its results. The digest
covers the canonical JSON of the results with timings, thread counts and node
counts removed, so two runs with the same inputs and seed produce the same
digest.
"""

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from cornerlab import __version__
from cornerlab.utils.logging import get_logger

logger = get_logger(__name__)

# Timings, thread counts and scheduling-dependent counters are left out of digests
VOLATILE_KEYS = frozenset({"wall_time", "timestamp", "elapsed", "elapsed_seconds", "nodes_explored", "threads"})


class RunManifest(BaseModel):
    """Record of one command invocation."""
    model_config = ConfigDict(extra="forbid")

    command: str = Field(description="CLI command name")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Effective parameters")
    seed: int = Field(default=0, description="Seed of every random draw")
    timestamp: str = Field(description="UTC time of the invocation, ISO 8601")
    artifact_version: str = Field(default=__version__, description="cornerlab version")
    results_digest: str = Field(description="SHA-256 of the canonical results without timings")


def strip_timings(data: Any) -> Any:
    """Drop volatile keys at every depth."""
    if isinstance(data, dict):
        return {k: strip_timings(v) for k, v in data.items() if k not in VOLATILE_KEYS}
    if isinstance(data, (list, tuple)):
        return [strip_timings(v) for v in data]
    return data


def canonical_json(data: Any) -> str:
    """Sorted-key, whitespace-free JSON."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def results_digest(results: Any) -> str:
    """SHA-256 over the canonical results with volatile keys stripped."""
    return hashlib.sha256(canonical_json(strip_timings(results)).encode("utf-8")).hexdigest()


def build_manifest(
    command: str,
    parameters: Dict[str, Any],
    seed: int,
    results: Any,
) -> RunManifest:
    """Create the manifest for a finished command."""
    return RunManifest(
        command=command,
        parameters=json.loads(canonical_json(parameters)),
        seed=seed,
        timestamp=datetime.now(timezone.utc).isoformat(),
        results_digest=results_digest(results),
    )


def write_manifest(manifest: RunManifest, output_dir: Union[str, Path], stem: Optional[str] = None) -> Path:
    """
    Write a manifest under <output_dir>/manifests/.

    Returns:
        Path of the written file
    """
    directory = Path(output_dir) / "manifests"
    directory.mkdir(parents=True, exist_ok=True)
    if stem is None:
        stamp = manifest.timestamp.replace(":", "").replace("-", "").replace("+", "_")
        stem = f"{manifest.command}-{stamp}"
    path = directory / f"{stem}.json"
    with open(path, "w", encoding="utf-8") as f:
        f.write(manifest.model_dump_json(indent=2))
    logger.debug(f"Manifest written to {path}")
    return path
