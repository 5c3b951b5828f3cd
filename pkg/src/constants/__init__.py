"""
Constants Package
Centralized constants for the Disk Pattern Workbench.
"""

from src.constants.app import APP_DEFAULTS, PATHS, REPORT_SCHEMA_VERSION, AppDefaults, Paths
from src.constants.cli import (
    COMMANDS,
    EXAMPLE_CHOICES,
    FAMILY_CHOICES,
    SEED_ENV_VAR,
    Command,
    CommandInfo,
    ExitCode,
)
from src.constants.tolerances import LIMITS, TOLERANCES, Limits, Tolerances

__all__ = [
    # App
    "APP_DEFAULTS",
    "PATHS",
    "REPORT_SCHEMA_VERSION",
    "AppDefaults",
    "Paths",
    # CLI
    "COMMANDS",
    "EXAMPLE_CHOICES",
    "FAMILY_CHOICES",
    "SEED_ENV_VAR",
    "Command",
    "CommandInfo",
    "ExitCode",
    # Numerics
    "LIMITS",
    "TOLERANCES",
    "Limits",
    "Tolerances",
]
