"""
Coxeter Graph Data Models
Weighted plane graphs, face classes, completions and realizability reports.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from src.core.types import EdgeKey, VertexId, edge_key
from src.models.graph_models import Face, PlaneGraph


def angle_fraction(code: int) -> Fraction:
    """Angle of a weight code as an exact multiple of pi (0 -> 0, n -> 1/n)."""
    return Fraction(0) if code == 0 else Fraction(1, code)


def angle_radians(code: int) -> float:
    """Angle of a weight code in radians."""
    return 0.0 if code == 0 else math.pi / code


def fraction_to_dict(value: Fraction) -> Dict[str, int]:
    """Exact rational as {num, den}."""
    return {"num": value.numerator, "den": value.denominator}


class FaceType(str, Enum):
    """Trichotomy of Coxeter graph faces."""
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class RealizabilityStatus(str, Enum):
    """Outcome of the realizability checks."""
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class CoxeterGraph:
    """Plane graph with a weight code on every edge (0 or n >= 2 meaning pi/n)."""
    graph: PlaneGraph
    weights: Dict[EdgeKey, int] = field(repr=False)

    def weight(self, u: VertexId, v: VertexId) -> int:
        """Weight code of edge uv."""
        return self.weights[edge_key(u, v)]

    def angle(self, u: VertexId, v: VertexId) -> Fraction:
        """Angle of edge uv as a multiple of pi."""
        return angle_fraction(self.weight(u, v))

    def radians(self, u: VertexId, v: VertexId) -> float:
        return angle_radians(self.weight(u, v))

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return self.graph.vertices

    def with_weights(self, updates: Dict[EdgeKey, int]) -> 'CoxeterGraph':
        """Copy with some weight codes replaced."""
        merged = dict(self.weights)
        for key, code in updates.items():
            merged[edge_key(*key)] = code
        return CoxeterGraph(graph=self.graph, weights=merged)


@dataclass(frozen=True)
class FaceClass:
    """Classification of one face with its exact weight sum."""
    kind: FaceType
    weight_sum: Fraction      # multiple of pi
    side_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "weight_sum": fraction_to_dict(self.weight_sum),
            "side_count": self.side_count,
        }


@dataclass(frozen=True)
class CompletedCoxeterGraph:
    """Coxeter graph plus weight-0 diagonals of its quadrilateral parabolic faces."""
    base: CoxeterGraph
    extra_edges: Tuple[EdgeKey, ...] = ()
    extraneous_faces: Tuple[Tuple[VertexId, VertexId, VertexId], ...] = ()

    def edges(self) -> List[EdgeKey]:
        return sorted(set(self.base.graph.edges) | set(self.extra_edges))

    def weight(self, u: VertexId, v: VertexId) -> int:
        key = edge_key(u, v)
        if key in self.base.weights:
            return self.base.weights[key]
        if key in self.extra_edges:
            return 0
        raise KeyError(key)

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        key = edge_key(u, v)
        return key in self.base.weights or key in self.extra_edges

    def to_dict(self) -> Dict[str, Any]:
        return {
            "extra_edges": [list(e) for e in self.extra_edges],
            "extraneous_faces": [list(t) for t in self.extraneous_faces],
        }


@dataclass(frozen=True)
class CycleViolation:
    """A cycle breaking one of the realizability conditions."""
    condition: str                  # "A", "B", "I" or "II"
    cycle: Tuple[VertexId, ...]
    weight_sum: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": self.condition,
            "cycle": list(self.cycle),
            "weight_sum": fraction_to_dict(self.weight_sum),
        }


@dataclass
class RealizabilityReport:
    """Verdict of check_realizable."""
    status: RealizabilityStatus
    route: str                          # "kat", "prism" or "none"
    conditions_hold: Optional[bool] = None
    violations: List[CycleViolation] = field(default_factory=list)
    reason: str = ""

    @property
    def is_realizable(self) -> bool:
        return self.status == RealizabilityStatus.REALIZABLE

    @property
    def witness(self) -> Optional[CycleViolation]:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "route": self.route,
            "conditions_hold": self.conditions_hold,
            "violations": [v.to_dict() for v in self.violations],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class NormalizationIssue:
    """Two adjacent triangular parabolic faces sharing a weight-0 edge."""
    shared_edge: EdgeKey
    faces: Tuple[Face, Face]
    merged_quadrilateral: Tuple[VertexId, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shared_edge": list(self.shared_edge),
            "faces": [list(f.boundary) for f in self.faces],
            "merged_quadrilateral": list(self.merged_quadrilateral),
        }


@dataclass(frozen=True)
class PrismLabelling:
    """Vertex roles in the triangular bipyramid graph."""
    a: VertexId
    b: VertexId
    equator: Tuple[VertexId, VertexId, VertexId]
