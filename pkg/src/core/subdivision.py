"""
Polygonal Subdivision Graphs
Construction and validation of (G, boundary) pairs, the hub triangulation,
acylindricity and the boundary-pair predicates.
"""

import itertools
import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.core.coxeter import classify_faces
from src.core.graph_core import (
    find_face,
    fresh_vertex_id,
    freeze_rotation,
    insert_face_hub,
    mutable_rotation,
    parse_graph_document,
    trace_faces,
)
from src.core.path_oracle import has_path
from src.core.types import EdgeKey, PreconditionError, Verdict, VertexId, edge_key
from src.models.coxeter_models import CoxeterGraph, FaceType, angle_fraction
from src.models.graph_models import Face, GraphDocument, PlaneGraph
from src.models.subdivision_models import SubdivisionGraph, TriangulatedExtension

logger = logging.getLogger(__name__)

HUB_PREFIX = "w"


# ============================================================================
# Construction
# ============================================================================

def make_subdivision(
    g: PlaneGraph,
    outer: Sequence[VertexId],
    weights: Optional[Mapping[EdgeKey, int]] = None,
) -> SubdivisionGraph:
    """
    Validate (g, outer) as a polygonal subdivision graph.

    Args:
        g: The plane graph
        outer: Boundary cycle of the outer face, either orientation
        weights: Optional weight codes carried along

    Raises:
        PreconditionError: outer is not a simple face with at least 3
            vertices, an interior face is not a Jordan domain, or there are
            fewer than 2 interior cells
    """
    if len(outer) < 3:
        raise PreconditionError("Outer boundary needs at least 3 vertices")
    if len(set(outer)) != len(outer):
        raise PreconditionError("Outer boundary is not a simple cycle")

    face = find_face(g, outer)
    if face is None:
        raise PreconditionError(f"{list(outer)} is not a face of the graph")

    interior = tuple(f for f in trace_faces(g) if f != face)
    if len(interior) < 2:
        raise PreconditionError(f"Subdivision needs at least 2 interior cells, found {len(interior)}")
    for f in interior:
        if not f.is_jordan:
            raise PreconditionError(f"Interior face {list(f.boundary)} is not a Jordan domain")

    # the outer walk keeps the unbounded side on its left
    ccw = tuple(reversed(face.boundary))
    start = ccw.index(min(ccw))
    boundary = ccw[start:] + ccw[:start]

    sg = SubdivisionGraph(
        graph=g,
        boundary=boundary,
        outer_face=face,
        interior_faces=interior,
        weights=dict(weights) if weights is not None else None,
    )
    logger.debug(f"Subdivision with {len(interior)} cells, complexity {sg.complexity}")
    return sg


def subdivision_from_document(doc: Union[str, Mapping[str, Any], GraphDocument]) -> SubdivisionGraph:
    """SubdivisionGraph from a graph document with an 'outer_face'."""
    parsed = doc if isinstance(doc, GraphDocument) else parse_graph_document(doc)
    if parsed.outer_face is None:
        raise PreconditionError("Document has no 'outer_face'")
    return make_subdivision(parsed.graph, parsed.outer_face, parsed.weights)


def subdivision_from_face(cg: CoxeterGraph, face: Face) -> SubdivisionGraph:
    """
    Subdivision of the complement of a hyperbolic face, bounded by that face.

    Raises:
        PreconditionError: face is not hyperbolic or some face is not Jordan
    """
    classes = classify_faces(cg)
    if face not in classes:
        raise PreconditionError(f"{list(face.boundary)} is not a face of the graph")
    if classes[face].kind != FaceType.HYPERBOLIC:
        raise PreconditionError(f"Face {list(face.boundary)} is {classes[face].kind.value}, not hyperbolic")
    for f in classes:
        if not f.is_jordan:
            raise PreconditionError(f"Face {list(f.boundary)} is not a Jordan domain")
    return make_subdivision(cg.graph, face.boundary, cg.weights)


# ============================================================================
# Boundary pairs
# ============================================================================

def boundary_adjacent(sg: SubdivisionGraph, v: VertexId, w: VertexId) -> bool:
    """Consecutive on the boundary cycle."""
    n = len(sg.boundary)
    return (sg.boundary_index(v) - sg.boundary_index(w)) % n in (1, n - 1)


def check_boundary_pair(sg: SubdivisionGraph, a: VertexId, b: VertexId) -> None:
    """
    Raises:
        PreconditionError: a or b off the boundary, equal, or consecutive
    """
    for v in (a, b):
        if not sg.is_boundary(v):
            raise PreconditionError(f"{v} is not a boundary vertex")
    if a == b:
        raise PreconditionError("Pair endpoints coincide")
    if boundary_adjacent(sg, a, b):
        raise PreconditionError(f"{a} and {b} are adjacent on the boundary")


def nonadjacent_boundary_pairs(sg: SubdivisionGraph) -> List[Tuple[VertexId, VertexId]]:
    """Boundary pairs that are not consecutive on the boundary cycle."""
    return [
        (v, w) for v, w in itertools.combinations(sg.boundary, 2)
        if not boundary_adjacent(sg, v, w)
    ]


def separating_family_nonempty(sg: SubdivisionGraph, v: VertexId, w: VertexId) -> bool:
    arc1, arc2 = sg.boundary_arcs(v, w)
    return has_path(sg.graph.rotation, arc1, arc2, blocked=sg.boundary_set)


def connecting_family_nonempty(sg: SubdivisionGraph, v: VertexId, w: VertexId) -> bool:
    return has_path(sg.graph.rotation, (v,), (w,), blocked=sg.boundary_set)


def connecting_families_nonempty(sg: SubdivisionGraph) -> Verdict:
    """Every pair of boundary vertices not adjacent in G has a connecting proper path."""
    for v, w in nonadjacent_boundary_pairs(sg):
        if sg.graph.has_edge(v, w):
            continue
        if not connecting_family_nonempty(sg, v, w):
            return Verdict.failed("no connecting proper path", witness=[v, w])
    return Verdict.passed("all connecting families nonempty")


def is_acylindrical_subdivision(
    sg: SubdivisionGraph,
    weights: Optional[Mapping[EdgeKey, int]] = None,
) -> Verdict:
    """
    For every pair v, w of boundary vertices not adjacent in G: some proper
    path separates them, and every interior common neighbor x has
    angle(xv) + angle(xw) < pi.
    """
    codes = dict(weights) if weights is not None else (sg.weights or {})
    g = sg.graph

    for v, w in nonadjacent_boundary_pairs(sg):
        if g.has_edge(v, w):
            continue
        if not separating_family_nonempty(sg, v, w):
            return Verdict.failed("no separating proper path", witness=[v, w])
        common = set(g.neighbors(v)) & set(g.neighbors(w))
        for x in sorted(common - sg.boundary_set):
            total = angle_fraction(codes.get(edge_key(x, v), 0)) + angle_fraction(codes.get(edge_key(x, w), 0))
            if total >= Fraction(1):
                return Verdict.failed("angles at a common interior neighbor reach pi", witness=[v, x, w])
    return Verdict.passed("acylindrical")


def pairs_unlinked(
    p: Tuple[VertexId, VertexId],
    q: Tuple[VertexId, VertexId],
    boundary: Sequence[VertexId],
) -> bool:
    """
    True iff the two boundary pairs do not interleave in the cyclic order.

    Raises:
        PreconditionError: a vertex is not on the boundary
    """
    position = {v: i for i, v in enumerate(boundary)}
    for v in (*p, *q):
        if v not in position:
            raise PreconditionError(f"{v} is not on the boundary")
    if set(p) & set(q):
        return True
    lo, hi = sorted((position[p[0]], position[p[1]]))
    inside = [lo < position[v] < hi for v in q]
    return inside[0] == inside[1]


def is_lamination(pairs: Sequence[Tuple[VertexId, VertexId]], boundary: Sequence[VertexId]) -> Verdict:
    """Pairwise unlinked collection of boundary pairs."""
    for p, q in itertools.combinations(pairs, 2):
        if not pairs_unlinked(p, q, boundary):
            return Verdict.failed("linked pairs", witness=[list(p), list(q)])
    return Verdict.passed("pairwise unlinked")


# ============================================================================
# Triangulation
# ============================================================================

def triangulate(sg: SubdivisionGraph) -> TriangulatedExtension:
    """
    Add a hub to every non-triangular interior face, joined to its boundary.

    Hub edges get weight code 0 when the graph is weighted.
    """
    rotation = mutable_rotation(sg.graph)
    taken = set(sg.vertices)
    order = list(sg.vertices)
    weights = dict(sg.weights) if sg.weights is not None else None
    hubs: Dict[Face, VertexId] = {}

    for face in sg.interior_faces:
        if face.is_triangle:
            continue
        hub = fresh_vertex_id(taken, HUB_PREFIX)
        taken.add(hub)
        order.append(hub)
        insert_face_hub(rotation, face.boundary, hub)
        hubs[face] = hub
        if weights is not None:
            for v in face.boundary:
                weights[edge_key(hub, v)] = 0

    if not hubs:
        ext_graph = sg
    else:
        graph = freeze_rotation(rotation, order)
        ext_graph = make_subdivision(graph, sg.boundary, weights)
        logger.debug(f"Triangulation adds {len(hubs)} hub(s)")

    quotient = {v: v for v in ext_graph.vertices}
    return TriangulatedExtension(graph=ext_graph, base=sg, added_vertices=hubs, quotient=quotient)
