"""
Settings Manager
Solver defaults loaded from configs/settings.json.
"""

import json
import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from src.constants.tolerances import LIMITS, TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverSettings:
    """Solver settings data structure."""
    # Extremal width
    admissibility_tol: float = TOLERANCES.admissibility
    certificate_tol: float = TOLERANCES.certificate
    max_cuts: int = LIMITS.max_cuts
    bruteforce_cap: int = LIMITS.bruteforce_max_free

    # Radius iteration
    layout_tol: float = TOLERANCES.layout
    layout_max_iter: int = LIMITS.layout_max_iter

    # Geometry
    arc_tol: float = TOLERANCES.arc

    # Randomized fixtures
    seed: int = 0


class SettingsManager:
    """
    Manages solver settings.

    Features:
    - Load settings from JSON file over dataclass defaults
    - Unknown keys are ignored with a warning
    - Runtime overrides from the CLI via override()

    Usage:
        settings = SettingsManager().settings
        tol = settings.admissibility_tol
    """

    _instance: Optional['SettingsManager'] = None

    def __new__(cls, *args, **kwargs) -> 'SettingsManager':
        """Singleton pattern."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, settings_path: Optional[str] = None):
        """
        Initialize SettingsManager.

        Args:
            settings_path: Path to settings JSON file
        """
        if self._initialized:
            return

        self._initialized = True

        if settings_path:
            self._settings_path = Path(settings_path)
        else:
            from src.core.storage_paths import get_settings_file_path
            self._settings_path = get_settings_file_path()

        self._settings = SolverSettings()
        self._load()

    def _load(self) -> None:
        """Load settings from file."""
        if not self._settings_path.exists():
            return
        try:
            with open(self._settings_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.error("Error loading settings: %s", e)
            return
        self._settings = self._merge(self._settings, data)

    @staticmethod
    def _merge(base: SolverSettings, data: Dict[str, Any]) -> SolverSettings:
        known = {f.name: f.type for f in fields(SolverSettings)}
        updates = {}
        for key, value in data.items():
            if key not in known:
                logger.warning("Ignoring unknown setting %r", key)
                continue
            current = getattr(base, key)
            updates[key] = type(current)(value)
        return replace(base, **updates)

    @property
    def settings(self) -> SolverSettings:
        """Current settings."""
        return self._settings

    def override(self, **values: Any) -> SolverSettings:
        """Apply runtime overrides (None values are skipped)."""
        self._settings = self._merge(self._settings, {k: v for k, v in values.items() if v is not None})
        return self._settings

    def reset(self) -> None:
        """Restore defaults and re-read the settings file."""
        self._settings = SolverSettings()
        self._load()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self._settings)


def get_settings() -> SolverSettings:
    """Shortcut for the current solver settings."""
    return SettingsManager().settings
