"""
Environment Configuration
Handles environment-specific settings (dev, prod, test) and logging setup.
"""

import logging
import os
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.constants.cli import SEED_ENV_VAR
from src.core.types import PreconditionError

ENV_VAR = "PD_ENV"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Environment(str, Enum):
    """Application environment modes."""
    DEVELOPMENT = "dev"
    PRODUCTION = "prod"
    TEST = "test"


@dataclass(frozen=True)
class EnvironmentConfig:
    """Environment-specific configuration."""
    debug: bool = False
    log_level: str = "WARNING"


_CONFIGS = {
    Environment.DEVELOPMENT: EnvironmentConfig(debug=True, log_level="DEBUG"),
    Environment.PRODUCTION: EnvironmentConfig(debug=False, log_level="WARNING"),
    Environment.TEST: EnvironmentConfig(debug=True, log_level="INFO"),
}


def get_environment() -> Environment:
    """
    Get the current environment from the PD_ENV variable.

    Returns:
        Environment enum value, defaults to PRODUCTION
    """
    env_str = os.environ.get(ENV_VAR, "prod").lower()
    try:
        return Environment(env_str)
    except ValueError:
        return Environment.PRODUCTION


def get_config() -> EnvironmentConfig:
    """Get the configuration for the current environment."""
    return _CONFIGS.get(get_environment(), _CONFIGS[Environment.PRODUCTION])


def seed_from_environment() -> Optional[int]:
    """
    Read the PD_SEED override.

    Returns:
        The seed, or None when the variable is unset

    Raises:
        PreconditionError: If the variable is set but not an integer
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw.strip())
    except ValueError as e:
        raise PreconditionError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from e


def configure_logging(level: Optional[str] = None, quiet: bool = False) -> None:
    """
    Install one stderr handler on the root logger.

    Args:
        level: Explicit level name; the environment default is used when None
        quiet: Only errors are logged
    """
    chosen = "ERROR" if quiet else (level or get_config().log_level)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_pd_handler", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._pd_handler = True  # type: ignore[attr-defined]
    root.addHandler(handler)
    root.setLevel(chosen.upper())
