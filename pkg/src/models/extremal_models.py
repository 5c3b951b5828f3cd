"""
Extremal Width Data Models
Vertex metrics, path families and solver results.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

from src.core.types import VertexId


class FamilyKind(str, Enum):
    """Proper path families of a boundary pair."""
    CONNECTING = "connecting"
    SEPARATING = "separating"


class EWStatus(str, Enum):
    """Solver outcome."""
    OPTIMAL = "optimal"
    EMPTY_FAMILY = "infeasible-family-empty"    # width 0
    UNBOUNDED_CHORD = "unbounded-chord"         # width inf


@dataclass(frozen=True)
class VertexMetric:
    """Nonnegative weights on vertices."""
    values: Mapping[VertexId, float]

    def __getitem__(self, v: VertexId) -> float:
        return self.values.get(v, 0.0)

    @property
    def area(self) -> float:
        return float(sum(x * x for x in self.values.values()))

    def to_dict(self) -> Dict[VertexId, float]:
        return {v: float(self.values[v]) for v in sorted(self.values)}


@dataclass(frozen=True)
class FamilySpec:
    """A connecting or separating family for the boundary pair (a, b)."""
    kind: FamilyKind
    a: VertexId
    b: VertexId

    @classmethod
    def connecting(cls, a: VertexId, b: VertexId) -> 'FamilySpec':
        return cls(FamilyKind.CONNECTING, a, b)

    @classmethod
    def separating(cls, a: VertexId, b: VertexId) -> 'FamilySpec':
        return cls(FamilyKind.SEPARATING, a, b)

    def dual(self) -> 'FamilySpec':
        """The other family of the same pair."""
        other = FamilyKind.SEPARATING if self.kind == FamilyKind.CONNECTING else FamilyKind.CONNECTING
        return FamilySpec(other, self.a, self.b)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "pair": [self.a, self.b]}


@dataclass
class EWResult:
    """Extremal width of one family."""
    width: float
    metric: VertexMetric
    status: EWStatus = EWStatus.OPTIMAL
    active_paths: List[Tuple[VertexId, ...]] = field(default_factory=list)
    iterations: int = 0
    gap: float = 0.0
    min_length: float = float("inf")
    method: str = "cutting-plane"

    @property
    def is_finite_positive(self) -> bool:
        return self.status == EWStatus.OPTIMAL and 0.0 < self.width < math.inf

    @property
    def length(self) -> float:
        """Extremal length 1/EW, with 1/0 = inf and 1/inf = 0."""
        return extremal_length(self)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "width": _json_float(self.width),
            "length": _json_float(self.length),
            "status": self.status.value,
            "metric": self.metric.to_dict(),
            "active_paths": [list(p) for p in self.active_paths],
            "iterations": self.iterations,
            "gap": self.gap,
            "min_length": _json_float(self.min_length),
            "method": self.method,
        }


def extremal_length(result: EWResult) -> float:
    """EL = 1/EW."""
    if result.width == 0.0:
        return math.inf
    if math.isinf(result.width):
        return 0.0
    return 1.0 / result.width


@dataclass
class DualityReport:
    """Widths of both families of a pair and the (quasi-)duality verdicts."""
    a: VertexId
    b: VertexId
    connecting: EWResult
    separating: EWResult
    complexity: int
    triangulated: bool
    product: Optional[float] = None
    lower_bound: float = 0.0
    holds: bool = False
    corollary_holds: Optional[bool] = None
    degenerate: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": [self.a, self.b],
            "complexity": self.complexity,
            "triangulated": self.triangulated,
            "connecting": self.connecting.to_dict(),
            "separating": self.separating.to_dict(),
            "product": self.product,
            "lower_bound": self.lower_bound,
            "holds": self.holds,
            "corollary": {
                "length_connecting": _json_float(self.connecting.length),
                "width_separating": _json_float(self.separating.width),
                "holds": self.corollary_holds,
            },
            "degenerate": self.degenerate,
        }


@dataclass
class ProjectionReport:
    """Sandwich EW_G <= EW_G~ <= (4N+1) EW_G for both families."""
    a: VertexId
    b: VertexId
    complexity: int
    widths: Dict[str, Dict[str, float]] = field(default_factory=dict)
    sandwich: Dict[str, bool] = field(default_factory=dict)
    certificates: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        certs = all(c.get("holds", False) for c in self.certificates.values())
        return all(self.sandwich.values()) and certs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": [self.a, self.b],
            "complexity": self.complexity,
            "factor": 4 * self.complexity + 1,
            "widths": self.widths,
            "sandwich": self.sandwich,
            "certificates": self.certificates,
            "holds": self.holds,
        }


def _json_float(value: float) -> Any:
    if math.isinf(value):
        return "inf"
    return value
