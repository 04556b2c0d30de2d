"""
Shipped JSON Schemas.

Every JSON document the CLI prints is a CommandOutput; its result member is
described by the command-specific models below. `cornerlab schemas` writes
one schema file per model.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Type, Union

from pydantic import BaseModel, ConfigDict, Field

from cornerlab.module.extremal import DensityRow
from cornerlab.module.ramsey import ColoringFile
from cornerlab.module.saturation import SearchCheckpoint
from cornerlab.utils.logging import get_logger

from .manifest import RunManifest
from .verify_claims import ClaimReport

logger = get_logger(__name__)


class CommandOutput(BaseModel):
    """Envelope of every CLI JSON document."""
    model_config = ConfigDict(extra="forbid")

    command: str = Field(description="CLI command name")
    ok: bool = Field(description="False when a check failed")
    result: Dict[str, Any] = Field(default_factory=dict, description="Command-specific payload")
    manifest: RunManifest = Field(description="Manifest of this invocation")
    manifest_path: str = Field(default="", description="Where the manifest was written")


class ErrorOutput(BaseModel):
    """Document printed when a command fails with a library error."""
    model_config = ConfigDict(extra="forbid")

    error: str = Field(description="Exception class name")
    message: str = Field(description="Human-readable message")
    context: Dict[str, str] = Field(default_factory=dict, description="Error parameters")
    exit_code: int = Field(description="Process exit code")


SCHEMA_MODELS: Dict[str, Type[BaseModel]] = {
    "command_output": CommandOutput,
    "error_output": ErrorOutput,
    "run_manifest": RunManifest,
    "claim_report": ClaimReport,
    "search_checkpoint": SearchCheckpoint,
    "coloring_file": ColoringFile,
    "density_row": DensityRow,
}


def json_schemas() -> Dict[str, Dict[str, Any]]:
    """Schema of every shipped model, by file stem."""
    return {name: model.model_json_schema() for name, model in SCHEMA_MODELS.items()}


def write_schemas(output_dir: Union[str, Path]) -> List[Path]:
    """Write <stem>.schema.json files; returns the written paths."""
    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, schema in json_schemas().items():
        path = directory / f"{name}.schema.json"
        with open(path, "w", encoding="utf-8") as f:
            json.dump(schema, f, indent=2, sort_keys=True)
        paths.append(path)
    logger.info(f"Wrote {len(paths)} schemas to {directory}")
    return paths
