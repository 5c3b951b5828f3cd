"""
Report Helpers
JSON report envelope, input hashing and encoders for exact and infinite values.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from src.constants.app import REPORT_SCHEMA_VERSION
from src.core.app_config import get_version
from src.core.types import ReportDict, Reportable

logger = logging.getLogger(__name__)


def input_digest(data: Union[str, bytes, None]) -> Optional[str]:
    """SHA-256 hex digest of the raw input, or None for generated inputs."""
    if data is None:
        return None
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def encode_value(value: Any) -> Any:
    """
    Convert a report value into plain JSON types.

    Fractions become {num, den}, infinities become "inf"/"-inf", NaN becomes
    null; objects exposing to_dict() are expanded recursively.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "to_dict"):
        return encode_value(value.to_dict())
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode_value(v) for v in items]
    # numpy scalars
    if hasattr(value, "item"):
        return encode_value(value.item())
    return str(value)


@dataclass
class Report:
    """
    Envelope shared by every CLI command.

    Usage:
        report = Report("ew", seed=0, input_sha256=input_digest(raw))
        report.result = ew_result
        write_report(report, output_path)
    """
    command: str
    seed: int
    input_sha256: Optional[str] = None
    ok: bool = True
    result: Any = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> ReportDict:
        data = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": get_version(),
            "command": self.command,
            "input_sha256": self.input_sha256,
            "seed": self.seed,
            "ok": self.ok,
            "result": encode_value(self.result),
        }
        for key, value in self.extra.items():
            data[key] = encode_value(value)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)


def write_text(text: str, output: Optional[Union[str, Path]]) -> None:
    """Write UTF-8 text to a file, or to stdout when no path is given."""
    if output is None:
        print(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def write_report(report: Report, output: Optional[Union[str, Path]] = None) -> None:
    write_text(report.to_json(), output)


def write_jsonl(records: Iterable[Union[Reportable, ReportDict]], path: Union[str, Path]) -> int:
    """Write one JSON object per line; returns the record count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(encode_value(record), ensure_ascii=False))
            f.write("\n")
            count += 1
    logger.info(f"Wrote {count} trace records to {path}")
    return count
