"""
Graph Generators
Worked examples, small fixtures and seeded random subdivision graphs.
"""

import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import Delaunay

from src.core.coxeter import make_coxeter_graph
from src.core.graph_core import build_plane_graph, dart_faces, rotation_from_positions
from src.core.subdivision import (
    connecting_families_nonempty,
    is_acylindrical_subdivision,
    make_subdivision,
    nonadjacent_boundary_pairs,
)
from src.core.types import ConvergenceError, EdgeKey, GraphFormatError, PreconditionError, VertexId, edge_key
from src.models.coxeter_models import CoxeterGraph
from src.models.subdivision_models import SubdivisionGraph

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

SQUARE: Dict[VertexId, Point] = {"A": (-2.0, 0.0), "B": (0.0, -2.0), "C": (2.0, 0.0), "D": (0.0, 2.0)}
SQUARE_CYCLE = ("A", "B", "C", "D")
MAX_ATTEMPTS = 1000


# ============================================================================
# Helpers
# ============================================================================

def cycle_edges(cycle: Sequence[VertexId]) -> List[Tuple[VertexId, VertexId]]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def subdivision_from_positions(
    positions: Mapping[VertexId, Point],
    edges: Iterable[Tuple[VertexId, VertexId]],
    boundary: Sequence[VertexId],
    weights: Optional[Mapping[EdgeKey, int]] = None,
    default_code: Optional[int] = 0,
) -> SubdivisionGraph:
    """
    Subdivision graph of a straight-line drawing.

    Edges missing from weights get default_code; None leaves the graph
    unweighted.
    """
    edge_list = list(edges)
    graph = build_plane_graph(positions.keys(), rotation_from_positions(positions, edge_list))
    codes: Optional[Dict[EdgeKey, int]] = None
    if default_code is not None or weights:
        codes = {edge_key(u, v): default_code or 0 for u, v in edge_list}
        codes.update({edge_key(*e): c for e, c in (weights or {}).items()})
    return make_subdivision(graph, boundary, codes)


def coxeter_from_positions(
    positions: Mapping[VertexId, Point],
    weights: Mapping[Tuple[VertexId, VertexId], int],
) -> CoxeterGraph:
    """Coxeter graph of a straight-line drawing; weights list every edge."""
    graph = build_plane_graph(positions.keys(), rotation_from_positions(positions, weights.keys()))
    return make_coxeter_graph(graph, {edge_key(u, v): c for (u, v), c in weights.items()})


def polygon_points(count: int, radius: float = 1.0, phase: float = 0.0) -> np.ndarray:
    angles = phase + 2.0 * np.pi * np.arange(count) / count
    return radius * np.column_stack([np.cos(angles), np.sin(angles)])


# ============================================================================
# Worked examples
# ============================================================================

def example_a() -> SubdivisionGraph:
    """
    Quadrilateral ABCD with interior vertices a, b, c.

    Connecting A to C requires a+b >= 1 and a+c >= 1; connecting B to D
    requires a >= 1 and b+c >= 1. Widths 2/3 and 3/2.
    """
    positions = dict(SQUARE)
    positions.update({"a": (-0.5, 0.0), "b": (0.5, -0.5), "c": (0.5, 0.5)})
    edges = cycle_edges(SQUARE_CYCLE) + [
        ("A", "a"), ("B", "a"), ("D", "a"),
        ("a", "b"), ("a", "c"), ("b", "c"),
        ("B", "b"), ("C", "b"), ("C", "c"), ("D", "c"),
    ]
    return subdivision_from_positions(positions, edges, SQUARE_CYCLE)


def example_b(n: int) -> SubdivisionGraph:
    """
    Quadrilateral ABCD with the interior path a0, ..., a{2n}.

    A sees a0..an, C sees an..a{2n}, B sees a0 and D sees a{2n}. The two
    large faces have n+3 sides. Widths 1 (A to C) and 1/(2n+1) (B to D).

    Raises:
        PreconditionError: n < 1
    """
    if n < 1:
        raise PreconditionError(f"Example B needs n >= 1, got {n}")
    chain = [f"a{i}" for i in range(2 * n + 1)]
    positions = dict(SQUARE)
    positions.update({v: (0.0, -1.0 + i / n) for i, v in enumerate(chain)})

    edges = cycle_edges(SQUARE_CYCLE) + list(zip(chain, chain[1:]))
    edges += [("A", chain[i]) for i in range(n + 1)]
    edges += [("C", chain[i]) for i in range(n, 2 * n + 1)]
    edges += [("B", chain[0]), ("D", chain[-1])]
    return subdivision_from_positions(positions, edges, SQUARE_CYCLE)


# ============================================================================
# Small fixtures
# ============================================================================

def quad_with_hub(hub_code: int = 0, boundary_code: int = 0) -> SubdivisionGraph:
    """Unit square ABCD (diagonal form) with one interior vertex x joined to all four."""
    positions = {"A": (-1.0, 0.0), "B": (0.0, -1.0), "C": (1.0, 0.0), "D": (0.0, 1.0), "x": (0.0, 0.0)}
    spokes = [("x", v) for v in SQUARE_CYCLE]
    weights = {edge_key(*e): boundary_code for e in cycle_edges(SQUARE_CYCLE)}
    weights.update({edge_key(*e): hub_code for e in spokes})
    return subdivision_from_positions(positions, cycle_edges(SQUARE_CYCLE) + spokes, SQUARE_CYCLE, weights)


def pentagon_face_subdivision() -> SubdivisionGraph:
    """Square boundary around one pentagonal cell q0..q4; the ring between them is triangulated."""
    positions = dict(SQUARE)
    ring = [f"q{k}" for k in range(5)]
    for k, v in enumerate(ring):
        angle = math.pi / 2 + 2 * math.pi * k / 5
        positions[v] = (0.8 * math.cos(angle), 0.8 * math.sin(angle))
    edges = cycle_edges(SQUARE_CYCLE) + cycle_edges(ring) + [
        ("D", "q0"), ("D", "q1"), ("A", "q1"), ("A", "q2"),
        ("B", "q2"), ("B", "q3"), ("C", "q3"), ("C", "q4"), ("D", "q4"),
    ]
    return subdivision_from_positions(positions, edges, SQUARE_CYCLE)


def flower(petals: int, weight_code: int = 0) -> SubdivisionGraph:
    """
    Center x surrounded by petals p0..p{k-1} on the unit circle.

    Raises:
        PreconditionError: fewer than 3 petals
    """
    if petals < 3:
        raise PreconditionError(f"A flower needs at least 3 petals, got {petals}")
    ring = [f"p{i}" for i in range(petals)]
    positions = {v: tuple(pt) for v, pt in zip(ring, polygon_points(petals).tolist())}
    positions["x"] = (0.0, 0.0)
    edges = cycle_edges(ring) + [("x", v) for v in ring]
    return subdivision_from_positions(positions, edges, ring, default_code=weight_code)


def elliptic_connection_graph(chord_code: int = 4) -> CoxeterGraph:
    """Pentagon v1..v5 with the chord v1-v3; every other edge has code 4."""
    ring = [f"v{i}" for i in range(1, 6)]
    positions = {v: tuple(pt) for v, pt in zip(ring, polygon_points(5, phase=math.pi / 2).tolist())}
    weights = {e: 4 for e in cycle_edges(ring)}
    weights[("v1", "v3")] = chord_code
    return coxeter_from_positions(positions, weights)


def right_angled_wheel(spoke_v1_code: int = 2) -> CoxeterGraph:
    """
    Wheel with hub x and rim v1..v4.

    Rim edges and the spokes to v2, v4 have code 3; the spoke to v3 has
    code 2. With the default spoke to v1 the path v1-x-v3 is a right-angled
    2-connection of the rim face.
    """
    ring = ["v1", "v2", "v3", "v4"]
    positions = {v: tuple(pt) for v, pt in zip(ring, polygon_points(4).tolist())}
    positions["x"] = (0.0, 0.0)
    weights = {e: 3 for e in cycle_edges(ring)}
    weights.update({("x", "v1"): spoke_v1_code, ("x", "v2"): 3, ("x", "v3"): 2, ("x", "v4"): 3})
    return coxeter_from_positions(positions, weights)


def right_angled_tetrahedron() -> CoxeterGraph:
    """K4 with every weight pi/2."""
    positions = {"t0": (0.0, 0.0)}
    ring = ["t1", "t2", "t3"]
    positions.update({v: tuple(pt) for v, pt in zip(ring, polygon_points(3, phase=math.pi / 2).tolist())})
    weights = {e: 2 for e in cycle_edges(ring)}
    weights.update({("t0", v): 2 for v in ring})
    return coxeter_from_positions(positions, weights)


# ============================================================================
# Random subdivisions
# ============================================================================

def _delaunay_edges(points: np.ndarray) -> List[Tuple[int, int]]:
    edges = set()
    for simplex in Delaunay(points).simplices:
        a, b, c = (int(i) for i in simplex)
        edges |= {tuple(sorted(p)) for p in ((a, b), (b, c), (a, c))}
    return sorted(edges)


def random_triangulated_subdivision(
    rng: np.random.Generator,
    max_vertices: int = 30,
    max_boundary: int = 8,
) -> SubdivisionGraph:
    """
    Delaunay triangulation of a regular polygon with random interior points.

    The boundary has at least 4 vertices on the unit circle; interior points
    lie within radius 0.7. Draws with a chord between boundary vertices are
    rejected.

    Raises:
        PreconditionError: max_vertices < 5
        ConvergenceError: no chord-free draw within the attempt cap
    """
    if max_vertices < 5:
        raise PreconditionError(f"Need room for 4 boundary and 1 interior vertex, got {max_vertices}")

    for _ in range(MAX_ATTEMPTS):
        k = int(rng.integers(4, min(max_boundary, max_vertices - 1) + 1))
        m = int(rng.integers(1, max_vertices - k + 1))
        radii = 0.7 * np.sqrt(rng.random(m))
        angles = 2.0 * np.pi * rng.random(m)
        inner = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        points = np.vstack([polygon_points(k), inner])

        names = [f"p{i}" for i in range(k)] + [f"v{i}" for i in range(m)]
        edges = _delaunay_edges(points)
        chord = any(i < k and j < k and (j - i) % k not in (1, k - 1) for i, j in edges)
        if chord:
            continue
        positions = {names[i]: (float(x), float(y)) for i, (x, y) in enumerate(points)}
        try:
            sg = subdivision_from_positions(
                positions,
                [(names[i], names[j]) for i, j in edges],
                names[:k],
                default_code=None,
            )
        except PreconditionError as e:
            logger.debug(f"Rejected draw: {e}")
            continue
        return sg
    raise ConvergenceError(f"No chord-free triangulation in {MAX_ATTEMPTS} draws")


def _single_run(walk: Sequence[VertexId], boundary: frozenset) -> bool:
    """Boundary vertices of a face walk form at most one contiguous run."""
    flags = [v in boundary for v in walk]
    if all(flags) or not any(flags):
        return True
    changes = sum(1 for i in range(len(flags)) if flags[i] != flags[i - 1])
    return changes == 2


def merge_faces(sg: SubdivisionGraph, u: VertexId, v: VertexId) -> SubdivisionGraph:
    """
    Remove the interior edge uv, merging the two cells on either side.

    Raises:
        PreconditionError: uv lies on the boundary or the result is not a subdivision
    """
    if sg.is_boundary(u) and sg.is_boundary(v) and sg.graph.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is a boundary edge")
    rotation = {w: tuple(x for x in sg.graph.rotation[w] if {w, x} != {u, v}) for w in sg.vertices}
    graph = build_plane_graph(sg.vertices, rotation)
    weights = None
    if sg.weights is not None:
        weights = {e: c for e, c in sg.weights.items() if e != edge_key(u, v)}
    return make_subdivision(graph, sg.boundary, weights)


def random_subdivision(
    rng: np.random.Generator,
    max_vertices: int = 30,
    max_complexity: int = 8,
) -> SubdivisionGraph:
    """
    Random triangulated subdivision with some adjacent cells merged.

    A merge is kept only if the two cells share exactly the removed edge's
    endpoints, the new cell has at most max_complexity sides and meets the
    boundary in one run, and every boundary pair keeps nonempty connecting
    and separating families.
    """
    sg = random_triangulated_subdivision(rng, max_vertices)
    target = int(rng.integers(1, max(2, len(sg.interior_faces) // 2) + 1))
    merged = 0

    for _ in range(4 * target):
        if merged >= target or len(sg.interior_faces) <= 2:
            break
        edges = [e for e in sg.graph.edges if not (sg.is_boundary(e[0]) and sg.is_boundary(e[1]))]
        if not edges:
            break
        u, v = edges[int(rng.integers(len(edges)))]

        faces = dart_faces(sg.graph)
        left, right = faces[(u, v)], faces[(v, u)]
        if left == right or left == sg.outer_face or right == sg.outer_face:
            continue
        if left.vertex_set & right.vertex_set != {u, v}:
            continue
        if left.side_count + right.side_count - 2 > max_complexity:
            continue

        try:
            candidate = merge_faces(sg, u, v)
        except (PreconditionError, GraphFormatError):
            continue
        new_faces = [f for f in candidate.interior_faces if f not in sg.interior_faces]
        if any(not _single_run(f.boundary, candidate.boundary_set) for f in new_faces):
            continue
        if not connecting_families_nonempty(candidate) or not is_acylindrical_subdivision(candidate):
            continue
        sg = candidate
        merged += 1

    logger.debug(f"Random subdivision: {merged} merge(s), complexity {sg.complexity}")
    return sg


def random_nonadjacent_pair(rng: np.random.Generator, sg: SubdivisionGraph) -> Tuple[VertexId, VertexId]:
    """Uniform boundary pair that is not consecutive on the boundary cycle."""
    pairs = nonadjacent_boundary_pairs(sg)
    if not pairs:
        raise PreconditionError("Boundary has no nonadjacent pair")
    return pairs[int(rng.integers(len(pairs)))]
