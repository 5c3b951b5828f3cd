"""
Type Definitions and Errors
Shared type aliases, the verdict result type and the exception hierarchy.
"""

from dataclasses import dataclass
from typing import Any, Dict, Protocol, Tuple


# ============================================================================
# Type Aliases
# ============================================================================

VertexId = str
EdgeKey = Tuple[VertexId, VertexId]
ReportDict = Dict[str, Any]


def edge_key(u: VertexId, v: VertexId) -> EdgeKey:
    """Canonical key of an undirected edge (lexicographically sorted pair)."""
    return (u, v) if u <= v else (v, u)


# ============================================================================
# Protocols
# ============================================================================

class Reportable(Protocol):
    """Anything that can be written into a JSON report."""

    def to_dict(self) -> ReportDict:
        """Convert to a JSON-compatible dictionary."""
        ...


# ============================================================================
# Result Types
# ============================================================================

@dataclass(frozen=True)
class Verdict:
    """Boolean outcome of a predicate together with its witness."""
    ok: bool
    reason: str = ""
    witness: Any = None

    @classmethod
    def passed(cls, reason: str = "") -> "Verdict":
        """Create a positive verdict."""
        return cls(ok=True, reason=reason)

    @classmethod
    def failed(cls, reason: str, witness: Any = None) -> "Verdict":
        """Create a negative verdict carrying a witness."""
        return cls(ok=False, reason=reason, witness=witness)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> ReportDict:
        """Convert to dictionary."""
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {"ok": self.ok, "reason": self.reason, "witness": witness}


# ============================================================================
# Errors
# ============================================================================

class DiskPatternError(Exception):
    """Base class for every error raised by the workbench."""


class GraphFormatError(DiskPatternError, ValueError):
    """A graph document or graph structure is malformed."""


class PreconditionError(DiskPatternError, ValueError):
    """An operation was called outside its precondition."""


class OracleSizeError(PreconditionError):
    """The brute-force oracle was asked to handle a graph above its size cap."""


class ConvergenceError(DiskPatternError, RuntimeError):
    """An iterative solver hit its iteration cap."""


class CertificateError(DiskPatternError, AssertionError):
    """A property that a construction guarantees did not hold numerically."""
