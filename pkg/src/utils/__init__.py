# Utility functions and helpers

from src.utils.reports import (
    Report,
    encode_value,
    input_digest,
    write_jsonl,
    write_report,
    write_text,
)

__all__ = [
    "Report",
    "encode_value",
    "input_digest",
    "write_jsonl",
    "write_report",
    "write_text",
]
