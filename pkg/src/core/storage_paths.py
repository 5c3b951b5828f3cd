"""
Storage Paths
Resolves the project root and the location of the bundled config files.
"""

import os
from pathlib import Path

from src.constants.app import PATHS

# Optional override of the configs directory (used by tests and packaged runs)
CONFIG_DIR_ENV_VAR = "PD_CONFIG_DIR"


def get_base_path() -> Path:
    """Project root (the directory holding main.py)."""
    return Path(__file__).resolve().parent.parent.parent


def get_configs_path() -> Path:
    """Directory containing app.json and settings.json."""
    override = os.environ.get(CONFIG_DIR_ENV_VAR)
    if override:
        return Path(override)
    return get_base_path() / PATHS.CONFIGS_DIR


def get_app_config_file_path() -> Path:
    """Path of the application metadata file."""
    return get_configs_path() / PATHS.APP_CONFIG_FILE


def get_settings_file_path() -> Path:
    """Path of the solver settings file."""
    return get_configs_path() / PATHS.SETTINGS_FILE
