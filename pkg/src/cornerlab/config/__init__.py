"""Configuration package."""

from .settings import (
    AnalysisConfig,
    CornerLabConfig,
    RamseyConfig,
    RuntimeConfig,
    SearchConfig,
    VerifyConfig,
    get_settings,
    load_config_from_env,
    load_config_from_file,
    reset_settings,
    save_config_to_file,
)

__all__ = [
    "AnalysisConfig",
    "CornerLabConfig",
    "RamseyConfig",
    "RuntimeConfig",
    "SearchConfig",
    "VerifyConfig",
    "get_settings",
    "load_config_from_env",
    "load_config_from_file",
    "reset_settings",
    "save_config_to_file",
]
