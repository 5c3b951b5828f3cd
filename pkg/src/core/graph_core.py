"""
Plane Graph Core
Parsing, face tracing, connectivity and path utilities for rotation systems.

Conventions:
- rotations are counterclockwise
- arriving at w along (v, w), the walk leaves along the neighbor preceding v
  in rotation(w); every face lies on the left of its darts, so bounded faces
  are traced counterclockwise and the unbounded one clockwise
"""

import itertools
import json
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np

from src.constants.tolerances import LIMITS
from src.core.types import EdgeKey, GraphFormatError, PreconditionError, VertexId, edge_key
from src.models.graph_models import Face, GraphDocument, Path, PlaneGraph

logger = logging.getLogger(__name__)

DOCUMENT_FIELDS = frozenset({"vertices", "rotation", "weights", "outer_face"})

Dart = Tuple[VertexId, VertexId]


# ============================================================================
# Construction and validation
# ============================================================================

def build_plane_graph(
    vertices: Iterable[VertexId],
    rotation: Mapping[VertexId, Sequence[VertexId]],
    check_euler: bool = True,
) -> PlaneGraph:
    """
    Validate a rotation system and wrap it as a PlaneGraph.

    Raises:
        GraphFormatError: self-loop, duplicate neighbor, asymmetric rotation,
            unknown vertex, disconnected graph or non-planar rotation
    """
    verts = tuple(vertices)
    if len(set(verts)) != len(verts):
        raise GraphFormatError("Duplicate vertex identifiers")
    if not verts:
        raise GraphFormatError("Graph has no vertices")

    vert_set = set(verts)
    extra = set(rotation) - vert_set
    if extra:
        raise GraphFormatError(f"Rotation given for unknown vertices: {sorted(extra)}")

    rot: Dict[VertexId, Tuple[VertexId, ...]] = {}
    for v in verts:
        nbrs = tuple(rotation.get(v, ()))
        if v in nbrs:
            raise GraphFormatError(f"Self-loop at {v}")
        if len(set(nbrs)) != len(nbrs):
            raise GraphFormatError(f"Duplicate neighbor in rotation of {v}")
        for w in nbrs:
            if w not in vert_set:
                raise GraphFormatError(f"Rotation of {v} lists unknown vertex {w}")
        rot[v] = nbrs

    for v in verts:
        for w in rot[v]:
            if v not in rot[w]:
                raise GraphFormatError(f"Asymmetric rotation: {w} listed at {v} but not {v} at {w}")

    graph = PlaneGraph(vertices=verts, rotation=rot)

    if len(verts) > 1 and not nx.is_connected(graph.to_networkx()):
        raise GraphFormatError("Graph is disconnected")

    if check_euler:
        faces = trace_faces(graph)
        euler = graph.num_vertices - graph.num_edges + len(faces)
        if euler != 2:
            raise GraphFormatError(f"Rotation system is not planar (V - E + F = {euler})")

    return graph


def parse_graph_document(doc: Union[str, bytes, Mapping[str, Any]]) -> GraphDocument:
    """
    Parse a graph document (JSON text or already decoded object).

    Raises:
        GraphFormatError: on any schema or structural violation
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"Invalid JSON: {e}") from e

    if not isinstance(doc, Mapping):
        raise GraphFormatError("Graph document must be a JSON object")

    unknown = set(doc) - DOCUMENT_FIELDS
    if unknown:
        raise GraphFormatError(f"Unknown fields: {sorted(unknown)}")
    if "vertices" not in doc or "rotation" not in doc:
        raise GraphFormatError("Graph document needs 'vertices' and 'rotation'")

    vertices = doc["vertices"]
    rotation = doc["rotation"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("'vertices' must be an array of strings")
    if not isinstance(rotation, Mapping):
        raise GraphFormatError("'rotation' must be an object")
    for v, nbrs in rotation.items():
        if not isinstance(nbrs, list) or not all(isinstance(w, str) for w in nbrs):
            raise GraphFormatError(f"Rotation of {v} must be an array of strings")

    graph = build_plane_graph(vertices, rotation)

    weights = None
    if "weights" in doc and doc["weights"] is not None:
        weights = _parse_weights(graph, doc["weights"])

    outer = None
    if "outer_face" in doc and doc["outer_face"] is not None:
        outer_raw = doc["outer_face"]
        if not isinstance(outer_raw, list) or not all(isinstance(v, str) for v in outer_raw):
            raise GraphFormatError("'outer_face' must be an array of strings")
        for v in outer_raw:
            if not graph.has_vertex(v):
                raise GraphFormatError(f"Outer face lists unknown vertex {v}")
        outer = tuple(outer_raw)

    return GraphDocument(graph=graph, weights=weights, outer_face=outer)


def parse_plane_graph(doc: Union[str, bytes, Mapping[str, Any]]) -> PlaneGraph:
    """Parse a graph document and return only its PlaneGraph."""
    return parse_graph_document(doc).graph


def _parse_weights(graph: PlaneGraph, raw: Any) -> Dict[EdgeKey, int]:
    """Weight triples [u, v, n]; every edge exactly once, n = 0 or n >= 2."""
    if not isinstance(raw, list):
        raise GraphFormatError("'weights' must be an array of [u, v, n] triples")

    weights: Dict[EdgeKey, int] = {}
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise GraphFormatError(f"Bad weight entry: {entry!r}")
        u, v, code = entry
        if not isinstance(u, str) or not isinstance(v, str):
            raise GraphFormatError(f"Bad weight endpoints: {entry!r}")
        if isinstance(code, bool) or not isinstance(code, int) or code < 0 or code == 1:
            raise GraphFormatError(f"Weight code must be 0 or an integer >= 2, got {code!r}")
        if not graph.has_edge(u, v):
            raise GraphFormatError(f"Weight given for non-edge {u}-{v}")
        key = edge_key(u, v)
        if key in weights:
            raise GraphFormatError(f"Edge {u}-{v} weighted twice")
        weights[key] = code

    missing = [e for e in graph.edges if e not in weights]
    if missing:
        raise GraphFormatError(f"Edges without weight: {[list(e) for e in missing[:5]]}")
    return weights


def serialize_plane_graph(
    g: PlaneGraph,
    weights: Optional[Mapping[EdgeKey, int]] = None,
    outer: Optional[Sequence[VertexId]] = None,
) -> Dict[str, Any]:
    """
    Canonical graph document.

    Vertices are sorted and each rotation starts at its smallest neighbor,
    so parse followed by serialize is stable.
    """
    doc: Dict[str, Any] = {
        "vertices": sorted(g.vertices),
        "rotation": {v: list(_rotate_to_min(g.rotation[v])) for v in sorted(g.vertices)},
    }
    if weights is not None:
        doc["weights"] = [[u, v, int(weights[(u, v)])] for (u, v) in sorted(weights)]
    if outer is not None:
        doc["outer_face"] = list(outer)
    return doc


def _rotate_to_min(seq: Sequence[VertexId]) -> Tuple[VertexId, ...]:
    if not seq:
        return tuple(seq)
    i = min(range(len(seq)), key=lambda k: seq[k])
    return tuple(seq[i:]) + tuple(seq[:i])


def rotation_from_positions(
    positions: Mapping[VertexId, Tuple[float, float]],
    edges: Iterable[Tuple[VertexId, VertexId]],
) -> Dict[VertexId, Tuple[VertexId, ...]]:
    """Counterclockwise rotation system of a straight-line drawing."""
    nbrs: Dict[VertexId, List[VertexId]] = {v: [] for v in positions}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    rotation: Dict[VertexId, Tuple[VertexId, ...]] = {}
    for v, around in nbrs.items():
        if not around:
            rotation[v] = ()
            continue
        x0, y0 = positions[v]
        pts = np.array([positions[w] for w in around], dtype=float)
        angles = np.arctan2(pts[:, 1] - y0, pts[:, 0] - x0)
        order = np.argsort(angles, kind="stable")
        rotation[v] = tuple(around[i] for i in order)
    return rotation


# ============================================================================
# Faces
# ============================================================================

def canonical_walk(walk: Sequence[VertexId]) -> Tuple[VertexId, ...]:
    """Lexicographically smallest cyclic shift of a walk."""
    n = len(walk)
    return min(tuple(walk[i:]) + tuple(walk[:i]) for i in range(n))


def next_dart(g: PlaneGraph, dart: Dart) -> Dart:
    """Successor of a dart along the face on its left."""
    v, w = dart
    rot = g.rotation[w]
    return (w, rot[(rot.index(v) - 1) % len(rot)])


def dart_faces(g: PlaneGraph) -> Dict[Dart, Face]:
    """Map every directed edge to the face on its left."""
    result: Dict[Dart, Face] = {}
    for u in g.vertices:
        for v in g.rotation[u]:
            if (u, v) in result:
                continue
            walk: List[VertexId] = []
            darts: List[Dart] = []
            dart = (u, v)
            while True:
                darts.append(dart)
                walk.append(dart[0])
                dart = next_dart(g, dart)
                if dart == (u, v):
                    break
            face = Face(boundary=canonical_walk(walk))
            for d in darts:
                result[d] = face
    return result


def trace_faces(g: PlaneGraph) -> List[Face]:
    """All faces of the embedding, each once, sorted by canonical boundary."""
    if g.num_edges == 0:
        return [Face(boundary=tuple(g.vertices))]
    faces = set(dart_faces(g).values())
    return sorted(faces, key=lambda f: f.boundary)


def face_of_dart(g: PlaneGraph, u: VertexId, v: VertexId) -> Face:
    """Face on the left of the dart (u, v)."""
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is not an edge")
    walk: List[VertexId] = []
    dart = (u, v)
    while True:
        walk.append(dart[0])
        dart = next_dart(g, dart)
        if dart == (u, v):
            break
    return Face(boundary=canonical_walk(walk))


def faces_around(g: PlaneGraph, v: VertexId) -> List[Tuple[VertexId, Face]]:
    """
    Faces at v in counterclockwise order.

    Entry i pairs the neighbor x_i with the face lying between x_i and
    x_{i+1} in rotation(v).
    """
    return [(x, face_of_dart(g, v, x)) for x in g.rotation[v]]


def find_face(g: PlaneGraph, cycle: Sequence[VertexId]) -> Optional[Face]:
    """Face whose boundary equals the cycle in either orientation."""
    if len(cycle) < 3:
        return None
    forward = canonical_walk(cycle)
    backward = canonical_walk(tuple(reversed(cycle)))
    for face in trace_faces(g):
        if face.boundary in (forward, backward):
            return face
    return None


def oriented_walk(face: Face, start: VertexId) -> Tuple[VertexId, ...]:
    """Boundary walk of a Jordan face rotated to begin at start."""
    i = face.boundary.index(start)
    return face.boundary[i:] + face.boundary[:i]


# ============================================================================
# Connectivity
# ============================================================================

def cut_set_witness(g: PlaneGraph, k: int) -> Optional[Tuple[VertexId, ...]]:
    """
    A set of k-1 vertices whose removal disconnects g, or None.

    Raises:
        PreconditionError: k outside {2, 3} or too few vertices
    """
    if k not in (2, 3):
        raise PreconditionError(f"k must be 2 or 3, got {k}")
    if g.num_vertices <= k:
        raise PreconditionError(f"Need more than {k} vertices, graph has {g.num_vertices}")
    if g.num_vertices > LIMITS.k_connectivity_max_vertices:
        logger.warning(f"k-connectivity on {g.num_vertices} vertices; subset removal may be slow")

    full = g.to_networkx()
    for removed in itertools.combinations(sorted(g.vertices), k - 1):
        rest = full.subgraph(v for v in g.vertices if v not in removed)
        if not nx.is_connected(rest):
            return removed
    return None


def is_k_connected(g: PlaneGraph, k: int) -> bool:
    """True iff removing any k-1 vertices leaves g connected."""
    return cut_set_witness(g, k) is None


# ============================================================================
# Paths
# ============================================================================

def is_simple_path(g: PlaneGraph, vertices: Sequence[VertexId]) -> bool:
    """At least two distinct vertices, consecutive ones adjacent."""
    if len(vertices) < 2 or len(set(vertices)) != len(vertices):
        return False
    return all(g.has_edge(u, v) for u, v in zip(vertices, vertices[1:]))


def make_path(g: PlaneGraph, vertices: Sequence[VertexId]) -> Path:
    """Validated Path."""
    if len(vertices) < 2:
        raise PreconditionError("A path needs at least two vertices")
    for v in vertices:
        if not g.has_vertex(v):
            raise PreconditionError(f"Vertex {v} is not in the graph")
    for u, v in zip(vertices, vertices[1:]):
        if not g.has_edge(u, v):
            raise PreconditionError(f"{u}-{v} is not an edge")
    return Path(vertices=tuple(vertices))


# ============================================================================
# Hub insertion
# ============================================================================

def fresh_vertex_id(taken: Set[VertexId], prefix: str) -> VertexId:
    """First identifier prefix0, prefix1, ... not yet taken."""
    for n in itertools.count():
        candidate = f"{prefix}{n}"
        if candidate not in taken:
            return candidate
    raise AssertionError("unreachable")


def mutable_rotation(g: PlaneGraph) -> Dict[VertexId, List[VertexId]]:
    return {v: list(g.rotation[v]) for v in g.vertices}


def insert_face_hub(
    rotation: Dict[VertexId, List[VertexId]],
    walk: Sequence[VertexId],
    hub: VertexId,
) -> None:
    """
    Join a new vertex to every vertex of a Jordan face walk (in place).

    The face is replaced by one triangle per side.
    """
    n = len(walk)
    for i, v in enumerate(walk):
        prev = walk[(i - 1) % n]
        rot = rotation[v]
        rot.insert(rot.index(prev), hub)
    rotation[hub] = list(walk)


def insert_corner_hub(
    rotation: Dict[VertexId, List[VertexId]],
    u: VertexId,
    x: VertexId,
    u_next: VertexId,
    hub: VertexId,
) -> None:
    """
    Cut the corner u -> x -> u_next of a face walk with a new vertex (in place).

    The hub is joined to u, x and u_next; the face keeps its side count with
    the hub standing in for x, and two triangles appear at the corner.
    """
    rot_x = rotation[x]
    rot_x.insert(rot_x.index(u), hub)
    rot_u = rotation[u]
    rot_u.insert(rot_u.index(x) + 1, hub)
    rot_w = rotation[u_next]
    rot_w.insert(rot_w.index(x), hub)
    rotation[hub] = [u, x, u_next]


def freeze_rotation(
    rotation: Mapping[VertexId, Sequence[VertexId]],
    order: Optional[Sequence[VertexId]] = None,
    check_euler: bool = True,
) -> PlaneGraph:
    """Validated PlaneGraph from an edited rotation."""
    verts = tuple(order) if order is not None else tuple(rotation)
    return build_plane_graph(verts, {v: tuple(rotation[v]) for v in verts}, check_euler=check_euler)
