"""
Configuration for CornerLab.

This module provides the settings tree used by every engine: thread counts,
seeds and output locations, search constants (tabu tenure, budgets), the
reporting constant of the monochromatic audit and the Bessel minimization
parameters. Settings come from defaults, a JSON/YAML file, a .env file and
CORNERLAB_* environment variables, in increasing priority.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import psutil
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = "CORNERLAB_"


class RuntimeConfig(BaseModel):
    """Process-level configuration"""
    model_config = ConfigDict(extra="forbid")

    threads: Optional[int] = Field(
        default=None,
        ge=1,
        description="Worker threads (None = physical core count)"
    )
    seed: int = Field(
        default=0,
        description="Default seed for randomized commands"
    )
    output_dir: Path = Field(
        default=Path("./results"),
        description="Directory for reports, manifests and checkpoints"
    )
    logs_dir: Path = Field(
        default=Path("./logs"),
        description="Directory for rotating log files"
    )
    log_level: str = Field(
        default="WARNING",
        description="Console logging level"
    )
    colored_logs: bool = Field(
        default=True,
        description="Use the colored console formatter"
    )
    log_to_file: bool = Field(
        default=True,
        description="Write rotating log files under logs_dir"
    )

    def resolved_threads(self) -> int:
        """Return the configured thread count, falling back to physical cores."""
        if self.threads:
            return self.threads
        return psutil.cpu_count(logical=False) or 1


class SearchConfig(BaseModel):
    """Configuration for saturation and extremal searches"""
    model_config = ConfigDict(extra="forbid")

    tabu_tenure: int = Field(
        default=7,
        ge=1,
        description="Iterations a removed point stays tabu in local search"
    )
    node_budget: int = Field(
        default=2_000_000,
        ge=1,
        description="Default node budget for branch-and-bound searches"
    )
    greedy_restarts: int = Field(
        default=100,
        ge=1,
        description="Default number of greedy restarts for saturation searches"
    )
    heuristic_restarts: int = Field(
        default=8,
        ge=1,
        description="Default number of tabu restarts for extremal searches"
    )
    moves_per_point: int = Field(
        default=40,
        ge=1,
        description="Local-search moves per restart, per domain point"
    )
    exact_max_points: int = Field(
        default=25,
        description="Largest domain (in points) allowed for a full subset sweep"
    )
    branch_bound_max_points: int = Field(
        default=49,
        description="Largest domain (in points) allowed for exact branch-and-bound"
    )


class RamseyConfig(BaseModel):
    """Configuration for coloring audits"""
    model_config = ConfigDict(extra="forbid")

    bound_constant: float = Field(
        default=5.0,
        ge=0.0,
        description="Reporting constant C in p^3/4 - C p^(5/2)"
    )
    random_colorings: int = Field(
        default=1000,
        ge=1,
        description="Colorings sampled per prime in batch audits"
    )


class AnalysisConfig(BaseModel):
    """Configuration for the Bessel minimization"""
    model_config = ConfigDict(extra="forbid")

    search_limit: float = Field(
        default=60.0,
        gt=0.0,
        description="Upper end T of the scan interval [0, T]"
    )
    extended_limit: float = Field(
        default=100.0,
        gt=0.0,
        description="Upper end of the tail stability re-run"
    )
    tolerance: float = Field(
        default=1e-10,
        gt=0.0,
        description="Golden-section tolerance in t"
    )
    scan_step: float = Field(
        default=0.01,
        gt=0.0,
        le=0.01,
        description="Step of the dense scan grid"
    )
    audit_points: int = Field(
        default=1_000_000,
        ge=1000,
        description="Points of the global audit grid"
    )
    reference_g_min: float = Field(
        default=-0.9683275949,
        description="Published minimum of 2 J0(t) + J0(sqrt(2) t)"
    )
    reference_tolerance: float = Field(
        default=1e-8,
        gt=0.0,
        description="Allowed deviation from the published minimum"
    )


class VerifyConfig(BaseModel):
    """Configuration for the claim verification battery"""
    model_config = ConfigDict(extra="forbid")

    p_list: List[int] = Field(
        default_factory=lambda: [3, 5, 7, 11],
        description="Primes exercised by the battery"
    )
    grid_list: List[int] = Field(
        default_factory=lambda: [4, 8],
        description="Integer grid sizes exercised by the battery"
    )
    gaussian_samples: int = Field(
        default=10_000,
        ge=1,
        description="Random corners per prime for the Gaussian identities"
    )
    random_sets: int = Field(
        default=50,
        ge=1,
        description="Random sets per prime for counting equivalence"
    )
    decomposition_samples: int = Field(
        default=1000,
        ge=1,
        description="Random sets per prime for the sigma decomposition"
    )
    saturation_max_p: int = Field(
        default=101,
        ge=3,
        description="Largest prime for the vertical-line saturation sweep"
    )
    katz_tao_primes: List[int] = Field(
        default_factory=lambda: [19],
        description="Primes p ≡ 3 (mod 4) whose planes also get the sum-difference size check, besides those in p_list"
    )
    exhaustive_max_p: int = Field(
        default=3,
        ge=3,
        description="Largest prime whose counters are checked on every set of at most four points"
    )


class CornerLabConfig(BaseModel):
    """Main configuration for CornerLab"""
    model_config = ConfigDict(extra="forbid")

    runtime: RuntimeConfig = Field(
        default_factory=RuntimeConfig,
        description="Process-level configuration"
    )
    search: SearchConfig = Field(
        default_factory=SearchConfig,
        description="Search configuration"
    )
    ramsey: RamseyConfig = Field(
        default_factory=RamseyConfig,
        description="Coloring audit configuration"
    )
    analysis: AnalysisConfig = Field(
        default_factory=AnalysisConfig,
        description="Bessel minimization configuration"
    )
    verify: VerifyConfig = Field(
        default_factory=VerifyConfig,
        description="Claim verification battery configuration"
    )


def _read_config_data(config_file: Path) -> Dict[str, Any]:
    with open(config_file, "r", encoding="utf-8") as f:
        if config_file.suffix.lower() in (".yaml", ".yml"):
            return yaml.safe_load(f) or {}
        return json.load(f)


def load_config_from_file(config_path: str) -> CornerLabConfig:
    """Load configuration from a JSON or YAML file"""
    config_file = Path(config_path)
    if not config_file.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    return CornerLabConfig(**_read_config_data(config_file))


def _env_overrides() -> Dict[str, Any]:
    config_data: Dict[str, Any] = {}

    if threads := os.getenv(f"{ENV_PREFIX}THREADS"):
        config_data.setdefault("runtime", {})["threads"] = int(threads)

    if seed := os.getenv(f"{ENV_PREFIX}SEED"):
        config_data.setdefault("runtime", {})["seed"] = int(seed)

    if log_level := os.getenv(f"{ENV_PREFIX}LOG_LEVEL"):
        config_data.setdefault("runtime", {})["log_level"] = log_level.upper()

    if output_dir := os.getenv(f"{ENV_PREFIX}OUTPUT_DIR"):
        config_data.setdefault("runtime", {})["output_dir"] = output_dir

    if logs_dir := os.getenv(f"{ENV_PREFIX}LOGS_DIR"):
        config_data.setdefault("runtime", {})["logs_dir"] = logs_dir

    if bound_constant := os.getenv(f"{ENV_PREFIX}BOUND_CONSTANT"):
        config_data.setdefault("ramsey", {})["bound_constant"] = float(bound_constant)

    if node_budget := os.getenv(f"{ENV_PREFIX}NODE_BUDGET"):
        config_data.setdefault("search", {})["node_budget"] = int(node_budget)

    return config_data


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config_from_env(config_path: Optional[str] = None) -> CornerLabConfig:
    """
    Load configuration from an optional file, then apply environment overrides.

    Args:
        config_path: Optional JSON/YAML configuration file

    Returns:
        The merged configuration
    """
    load_dotenv()

    config_data: Dict[str, Any] = {}
    if config_path:
        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")
        config_data = _read_config_data(config_file)

    return CornerLabConfig(**_merge(config_data, _env_overrides()))


def save_config_to_file(config: CornerLabConfig, config_path: str) -> None:
    """Save configuration to a JSON or YAML file"""
    config_file = Path(config_path)
    config_file.parent.mkdir(parents=True, exist_ok=True)

    data = config.model_dump(mode="json")
    with open(config_file, "w", encoding="utf-8") as f:
        if config_file.suffix.lower() in (".yaml", ".yml"):
            yaml.safe_dump(data, f, sort_keys=False)
        else:
            json.dump(data, f, indent=2)


_settings: Optional[CornerLabConfig] = None


def get_settings(config_path: Optional[str] = None) -> CornerLabConfig:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None or config_path is not None:
        _settings = load_config_from_env(config_path)
    return _settings


def reset_settings() -> None:
    """Drop the cached settings (used by tests and the CLI callback)."""
    global _settings
    _settings = None
