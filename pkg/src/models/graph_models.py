"""
Plane Graph Data Models
Defines the embedded graph, its faces and vertex paths.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx

from src.core.types import EdgeKey, VertexId, edge_key


@dataclass(frozen=True)
class PlaneGraph:
    """
    Simple connected plane graph given by a rotation system.

    Each rotation lists the neighbors of a vertex in counterclockwise order.
    Instances are validated by graph_core.build_plane_graph; do not
    construct them from untrusted data directly.
    """
    vertices: Tuple[VertexId, ...]
    rotation: Mapping[VertexId, Tuple[VertexId, ...]] = field(repr=False)

    @cached_property
    def edges(self) -> Tuple[EdgeKey, ...]:
        """Sorted canonical edge keys."""
        keys = {edge_key(u, v) for u in self.vertices for v in self.rotation[u]}
        return tuple(sorted(keys))

    @cached_property
    def _edge_set(self) -> FrozenSet[EdgeKey]:
        return frozenset(self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: VertexId) -> Tuple[VertexId, ...]:
        """Counterclockwise neighbors of v."""
        return self.rotation[v]

    def degree(self, v: VertexId) -> int:
        return len(self.rotation[v])

    def has_vertex(self, v: VertexId) -> bool:
        return v in self.rotation

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return edge_key(u, v) in self._edge_set

    def to_networkx(self) -> nx.Graph:
        """Abstract (non-embedded) view of the graph."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class Face:
    """A face given by its boundary walk (face on the left of every dart)."""
    boundary: Tuple[VertexId, ...]

    @property
    def side_count(self) -> int:
        """Number of edge-sides on the boundary walk."""
        return len(self.boundary)

    @property
    def is_jordan(self) -> bool:
        """True when the boundary walk is a simple cycle."""
        return len(set(self.boundary)) == len(self.boundary)

    @property
    def is_triangle(self) -> bool:
        return self.side_count == 3

    @property
    def vertex_set(self) -> FrozenSet[VertexId]:
        return frozenset(self.boundary)

    def darts(self) -> List[Tuple[VertexId, VertexId]]:
        """Directed edges of the boundary walk."""
        n = len(self.boundary)
        return [(self.boundary[i], self.boundary[(i + 1) % n]) for i in range(n)]

    def sides(self) -> List[EdgeKey]:
        """Undirected edge keys of the walk, one per side."""
        return [edge_key(u, v) for u, v in self.darts()]

    def contains_vertex(self, v: VertexId) -> bool:
        return v in self.boundary

    def neighbors_on_boundary(self, v: VertexId) -> Tuple[VertexId, VertexId]:
        """(predecessor, successor) of v on a Jordan boundary walk."""
        i = self.boundary.index(v)
        n = len(self.boundary)
        return self.boundary[(i - 1) % n], self.boundary[(i + 1) % n]

    def to_dict(self) -> Dict[str, Any]:
        return {"boundary": list(self.boundary), "side_count": self.side_count}


@dataclass(frozen=True)
class Path:
    """Vertex path v0, ..., v_{n+1}."""
    vertices: Tuple[VertexId, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def endpoints(self) -> Tuple[VertexId, VertexId]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> Tuple[VertexId, ...]:
        return self.vertices[1:-1]

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def to_list(self) -> List[VertexId]:
        return list(self.vertices)


@dataclass(frozen=True)
class GraphDocument:
    """Parsed graph document: the embedding plus optional weights and outer face."""
    graph: PlaneGraph
    weights: Optional[Dict[EdgeKey, int]] = None
    outer_face: Optional[Tuple[VertexId, ...]] = None
