"""
Application Constants
Core application metadata defaults and project paths.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class AppDefaults:
    """Fallback metadata when configs/app.json cannot be read."""
    version: str = "0.1.0"
    name: str = "Disk Pattern Workbench"
    description: str = "Extremal width, realizability and layout tools for disk patterns"
    author: str = "HoangLuu"
    license: str = "GPL-3.0"


@dataclass(frozen=True)
class Paths:
    """Relative locations inside the project root."""
    CONFIGS_DIR: str = "configs"
    APP_CONFIG_FILE: str = "app.json"
    SETTINGS_FILE: str = "settings.json"


APP_DEFAULTS = AppDefaults()
PATHS = Paths()

# Version of the JSON report layout emitted by the CLI
REPORT_SCHEMA_VERSION = 1
