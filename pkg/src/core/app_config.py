"""
Application Configuration Manager
Tool metadata stamped into every report.
"""

import json
import logging
import re
from dataclasses import asdict, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from src.constants.app import APP_DEFAULTS, AppDefaults

logger = logging.getLogger(__name__)

VERSION_PATTERN = re.compile(r"^\d+\.\d+\.\d+([.-][0-9A-Za-z.]+)?$")


class AppConfigManager:
    """
    Reads configs/app.json once per process.

    Features:
    - Missing or unreadable files fall back to AppDefaults
    - Unknown keys and malformed versions are logged and ignored
    - Singleton pattern for app-wide access

    Usage:
        version = AppConfigManager().version
    """

    _instance: Optional['AppConfigManager'] = None

    def __new__(cls, *args, **kwargs) -> 'AppConfigManager':
        """Singleton pattern."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, config_path: Optional[str] = None):
        if self._initialized:
            return

        self._initialized = True

        if config_path:
            self._config_path = Path(config_path)
        else:
            from src.core.storage_paths import get_app_config_file_path
            self._config_path = get_app_config_file_path()

        self._metadata: AppDefaults = APP_DEFAULTS
        self.reload()

    def reload(self) -> None:
        """Re-read the metadata file."""
        self._metadata = self._read(self._config_path)

    @staticmethod
    def _read(path: Path) -> AppDefaults:
        if not path.exists():
            logger.warning(f"app.json not found at {path}, using defaults")
            return APP_DEFAULTS
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            logger.error(f"Error loading app config: {e}")
            return APP_DEFAULTS
        if not isinstance(data, dict):
            logger.error(f"{path} must hold a JSON object")
            return APP_DEFAULTS

        known = {f.name for f in fields(AppDefaults)}
        values = {k: str(v) for k, v in data.items() if k in known}
        version = values.get("version")
        if version is not None and not VERSION_PATTERN.match(version):
            logger.warning(f"Ignoring malformed version {version!r}")
            del values["version"]
        return replace(APP_DEFAULTS, **values)

    @property
    def metadata(self) -> AppDefaults:
        return self._metadata

    @property
    def version(self) -> str:
        return self._metadata.version

    @property
    def name(self) -> str:
        return self._metadata.name

    @property
    def author(self) -> str:
        return self._metadata.author

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self._metadata)


def get_version() -> str:
    """Get application version."""
    return AppConfigManager().version


def get_app_name() -> str:
    """Get application name."""
    return AppConfigManager().name


def get_app_author() -> str:
    return AppConfigManager().author
