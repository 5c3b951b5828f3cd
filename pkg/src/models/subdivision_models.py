"""
Subdivision Data Models
Polygonal subdivision graphs, their triangulations and the staged metric trace.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from src.core.types import EdgeKey, VertexId, edge_key
from src.models.graph_models import Face, PlaneGraph


@dataclass(frozen=True)
class SubdivisionGraph:
    """
    Plane graph with a distinguished outer polygon boundary.

    The boundary is stored counterclockwise (interior of the polygon on the
    left), starting at its smallest vertex identifier.
    """
    graph: PlaneGraph
    boundary: Tuple[VertexId, ...]
    outer_face: Face
    interior_faces: Tuple[Face, ...]
    weights: Optional[Dict[EdgeKey, int]] = field(default=None, repr=False)

    @cached_property
    def boundary_set(self) -> FrozenSet[VertexId]:
        return frozenset(self.boundary)

    @cached_property
    def _position(self) -> Dict[VertexId, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    @property
    def complexity(self) -> int:
        """Maximum side count over interior faces."""
        return max(face.side_count for face in self.interior_faces)

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return self.graph.vertices

    @property
    def interior_vertices(self) -> Tuple[VertexId, ...]:
        return tuple(v for v in self.graph.vertices if v not in self.boundary_set)

    @property
    def is_triangulated(self) -> bool:
        return all(face.is_triangle for face in self.interior_faces)

    def is_boundary(self, v: VertexId) -> bool:
        return v in self.boundary_set

    def boundary_index(self, v: VertexId) -> int:
        return self._position[v]

    def boundary_arcs(self, a: VertexId, b: VertexId) -> Tuple[Tuple[VertexId, ...], Tuple[VertexId, ...]]:
        """
        Components of the boundary cycle minus {a, b}.

        Returns:
            (vertices strictly between a and b going counterclockwise,
             vertices strictly between b and a going counterclockwise)
        """
        n = len(self.boundary)
        i, j = self._position[a], self._position[b]
        first = tuple(self.boundary[(i + t) % n] for t in range(1, (j - i) % n))
        second = tuple(self.boundary[(j + t) % n] for t in range(1, (i - j) % n))
        return first, second

    def weight(self, u: VertexId, v: VertexId) -> int:
        """Weight code of edge uv (0 when the graph carries no weights)."""
        if self.weights is None:
            return 0
        return self.weights.get(edge_key(u, v), 0)

    def with_weights(self, weights: Optional[Dict[EdgeKey, int]]) -> 'SubdivisionGraph':
        return SubdivisionGraph(
            graph=self.graph,
            boundary=self.boundary,
            outer_face=self.outer_face,
            interior_faces=self.interior_faces,
            weights=weights,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "boundary": list(self.boundary),
            "complexity": self.complexity,
            "interior_faces": [list(f.boundary) for f in self.interior_faces],
        }


@dataclass(frozen=True)
class TriangulatedExtension:
    """The triangulation obtained by adding a hub to every non-triangular interior face."""
    graph: SubdivisionGraph
    base: SubdivisionGraph
    added_vertices: Dict[Face, VertexId] = field(repr=False)
    quotient: Dict[VertexId, VertexId] = field(repr=False)

    @property
    def hubs(self) -> Tuple[VertexId, ...]:
        return tuple(self.added_vertices[f] for f in self.base.interior_faces if f in self.added_vertices)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hubs": {hub: list(face.boundary) for face, hub in self.added_vertices.items()},
            "vertex_count": self.graph.graph.num_vertices,
        }


@dataclass
class NeighborRecord:
    """Per-neighbor quantities of one stage, in fan order."""
    vertex: VertexId
    m: float
    d: float
    d_reduced: float
    e: float
    e_reduced: float
    f: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex": self.vertex,
            "m": self.m,
            "d": _finite(self.d),
            "d_reduced": _finite(self.d_reduced),
            "e": _finite(self.e),
            "e_reduced": _finite(self.e_reduced),
            "f": _finite(self.f) if self.f is not None else None,
        }


@dataclass
class StageRecord:
    """Everything computed while processing one vertex."""
    index: int
    vertex: VertexId
    is_boundary: bool
    m: float
    d: float
    e: float
    neighbors: List[NeighborRecord] = field(default_factory=list)
    fan_length: int = 0                                        # l
    j_sequence: List[int] = field(default_factory=list)        # j_p..j_q, 1-based fan indices
    j_zero_position: int = 0                                   # position of j_0 inside j_sequence
    new_vertices: Dict[VertexId, float] = field(default_factory=dict)
    new_vertex_faces: Dict[VertexId, Tuple[VertexId, ...]] = field(default_factory=dict)
    old_values_kept: bool = True
    min_length: Optional[float] = None
    admissible: bool = True
    new_weight_total: float = 0.0
    weight_bound_holds: bool = True

    @property
    def d_reduced(self) -> float:
        return self.d - self.m

    @property
    def checks_hold(self) -> bool:
        return self.old_values_kept and self.admissible and self.weight_bound_holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stage": self.index,
            "vertex": self.vertex,
            "boundary": self.is_boundary,
            "m": self.m,
            "d": _finite(self.d),
            "e": _finite(self.e),
            "neighbors": [n.to_dict() for n in self.neighbors],
            "fan_length": self.fan_length,
            "j_sequence": list(self.j_sequence),
            "j_zero_position": self.j_zero_position,
            "new_vertices": dict(self.new_vertices),
            "old_values_kept": self.old_values_kept,
            "admissibility": {"holds": self.admissible, "min_length": _finite(self.min_length)},
            "weight_bound": {"holds": self.weight_bound_holds, "total": self.new_weight_total, "bound": 2.0 * self.m},
        }


@dataclass
class StagedMetricTrace:
    """State of the staged construction: current graph, metric and stage records."""
    base: SubdivisionGraph
    family: str
    a: VertexId
    b: VertexId
    graph: PlaneGraph
    metric: Dict[VertexId, float]
    initial_metric: Dict[VertexId, float]
    order: Tuple[VertexId, ...]
    sealed: set = field(default_factory=set)
    hub_owner: Dict[VertexId, Tuple[VertexId, Face]] = field(default_factory=dict)
    face_origin: Dict[Tuple[VertexId, ...], Face] = field(default_factory=dict, repr=False)
    stages: List[StageRecord] = field(default_factory=list)

    @property
    def processed(self) -> Tuple[VertexId, ...]:
        return tuple(s.vertex for s in self.stages)

    @property
    def is_complete(self) -> bool:
        return len(self.stages) == len(self.order)

    @property
    def next_vertex(self) -> Optional[VertexId]:
        return None if self.is_complete else self.order[len(self.stages)]

    def delta(self, v: VertexId, face: Face) -> float:
        """Weight given to the staged vertex of (v, face), 0 if none was created."""
        for hub, (owner, owner_face) in self.hub_owner.items():
            if owner == v and owner_face == face:
                return self.metric[hub]
        return 0.0


@dataclass
class ProjectionCertificate:
    """Result of pushing the staged metric forward onto the triangulation."""
    metric: Dict[VertexId, float]
    area_projected: float
    area_original: float
    complexity: int
    min_length: float
    admissible: bool
    vanishes_on_boundary: bool

    @property
    def ratio(self) -> float:
        if self.area_original == 0.0:
            return 1.0 if self.area_projected == 0.0 else float("inf")
        return self.area_projected / self.area_original

    @property
    def bound(self) -> int:
        return 4 * self.complexity + 1

    @property
    def holds(self) -> bool:
        return self.admissible and self.vanishes_on_boundary and self.ratio <= self.bound + 1e-12

    def to_dict(self) -> Dict[str, Any]:
        return {
            "area_projected": self.area_projected,
            "area_original": self.area_original,
            "ratio": _finite(self.ratio),
            "bound": self.bound,
            "min_length": _finite(self.min_length),
            "admissible": self.admissible,
            "vanishes_on_boundary": self.vanishes_on_boundary,
            "holds": self.holds,
        }


def _finite(value: Optional[float]) -> Any:
    """JSON-safe float (infinities become strings)."""
    if value is None:
        return None
    if value == float("inf"):
        return "inf"
    if value == float("-inf"):
        return "-inf"
    return value
