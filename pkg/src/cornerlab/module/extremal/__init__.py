"""Largest configuration-free sets and density tables."""

from .search import (
    ExtremalKind,
    ExtremalMode,
    ExtremalRecord,
    ExtremalSearch,
    is_config_free,
    max_config_free,
)
from .table import DensityRow, density_table, write_density_table

__all__ = [
    "DensityRow",
    "ExtremalKind",
    "ExtremalMode",
    "ExtremalRecord",
    "ExtremalSearch",
    "density_table",
    "is_config_free",
    "max_config_free",
    "write_density_table",
]
