# Core algorithms and configuration managers

from src.core.app_config import AppConfigManager
from src.core.settings_manager import SettingsManager, SolverSettings
from src.core.types import (
    CertificateError,
    ConvergenceError,
    DiskPatternError,
    GraphFormatError,
    OracleSizeError,
    PreconditionError,
    Verdict,
)

__all__ = [
    "AppConfigManager",
    "SettingsManager",
    "SolverSettings",
    "Verdict",
    "DiskPatternError",
    "GraphFormatError",
    "PreconditionError",
    "OracleSizeError",
    "ConvergenceError",
    "CertificateError",
]
