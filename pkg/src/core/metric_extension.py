"""
Staged Metric Extension
Extends an admissible metric on a subdivision graph, one vertex at a time,
to the graph where every corner of every non-triangular face carries a new
vertex; then pushes it forward onto the hub triangulation.

Each stage checks:
- old values are unchanged
- the extended metric stays admissible for the family
- the new weights at a vertex sum to at most twice its own weight
"""

import heapq
import logging
import math
from collections import deque
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from src.core.graph_core import (
    canonical_walk,
    dart_faces,
    fresh_vertex_id,
    freeze_rotation,
    insert_corner_hub,
    mutable_rotation,
)
from src.core.path_oracle import shortest_path
from src.core.settings_manager import get_settings
from src.core.subdivision import check_boundary_pair, triangulate
from src.core.types import CertificateError, PreconditionError, VertexId, edge_key
from src.models.extremal_models import FamilyKind
from src.models.graph_models import Face, PlaneGraph
from src.models.subdivision_models import (
    NeighborRecord,
    ProjectionCertificate,
    StagedMetricTrace,
    StageRecord,
    SubdivisionGraph,
    TriangulatedExtension,
)

logger = logging.getLogger(__name__)

STAGED_PREFIX = "y"
INF = math.inf


# ============================================================================
# Family sides
# ============================================================================

def family_sides(
    sg: SubdivisionGraph,
    a: VertexId,
    b: VertexId,
    family: FamilyKind,
) -> Tuple[Tuple[VertexId, ...], Tuple[VertexId, ...]]:
    """Start and end vertex sets of the family's proper paths."""
    if family == FamilyKind.CONNECTING:
        return (a,), (b,)
    return sg.boundary_arcs(a, b)


def family_min_length(
    graph: PlaneGraph,
    metric: Mapping[VertexId, float],
    sources: Sequence[VertexId],
    targets: Sequence[VertexId],
    blocked: Set[VertexId],
) -> float:
    """Shortest proper path length (inf for an empty family)."""
    found = shortest_path(graph.rotation, lambda v: metric.get(v, 0.0), sources, targets, blocked)
    return INF if found is None else found[1]


def stage_order(sg: SubdivisionGraph) -> Tuple[VertexId, ...]:
    """Interior vertices first, then boundary vertices, each ascending."""
    return tuple(sorted(sg.interior_vertices)) + tuple(sorted(sg.boundary))


# ============================================================================
# Trace setup
# ============================================================================

def init_metric_trace(
    sg: SubdivisionGraph,
    metric: Mapping[VertexId, float],
    a: VertexId,
    b: VertexId,
    family: FamilyKind = FamilyKind.CONNECTING,
) -> StagedMetricTrace:
    """
    Start a staged construction from an admissible metric.

    Raises:
        PreconditionError: bad pair, negative or non-vanishing boundary
            values, or a metric that is not admissible
    """
    check_boundary_pair(sg, a, b)
    tol = get_settings().admissibility_tol

    values = {v: float(metric.get(v, 0.0)) for v in sg.vertices}
    negative = [v for v, x in values.items() if x < 0.0]
    if negative:
        raise PreconditionError(f"Metric is negative at {negative[:5]}")
    on_boundary = [v for v in sg.boundary if values[v] != 0.0]
    if on_boundary:
        raise PreconditionError(f"Metric must vanish on the boundary, nonzero at {on_boundary[:5]}")

    sources, targets = family_sides(sg, a, b, family)
    shortest = family_min_length(sg.graph, values, sources, targets, set(sg.boundary))
    if shortest < 1.0 - tol:
        raise PreconditionError(f"Input metric is not admissible (shortest proper path {shortest:.12g})")

    return StagedMetricTrace(
        base=sg,
        family=family.value,
        a=a,
        b=b,
        graph=sg.graph,
        metric=dict(values),
        initial_metric=dict(values),
        order=stage_order(sg),
        face_origin={f.boundary: f for f in sg.interior_faces},
    )


# ============================================================================
# Geodesics
# ============================================================================

def geodesic_tree(
    graph: PlaneGraph,
    metric: Mapping[VertexId, float],
    roots: Sequence[VertexId],
    blocked: Set[VertexId],
) -> Tuple[Dict[VertexId, float], Dict[VertexId, Tuple[VertexId, ...]]]:
    """
    Shortest paths from a root set through unblocked vertices.

    Returns:
        (length to the nearest root including both ends,
         path from the vertex back to its root)
    """
    dist: Dict[VertexId, float] = {}
    route: Dict[VertexId, Tuple[VertexId, ...]] = {}
    heap: List[Tuple[float, Tuple[VertexId, ...]]] = []
    for r in sorted(set(roots)):
        heapq.heappush(heap, (metric.get(r, 0.0), (r,)))

    root_set = set(roots)
    while heap:
        length, path = heapq.heappop(heap)
        u = path[-1]
        if u in dist:
            continue
        dist[u] = length
        route[u] = tuple(reversed(path))
        for w in graph.rotation[u]:
            if w in dist or w in blocked or w in root_set:
                continue
            heapq.heappush(heap, (length + metric.get(w, 0.0), path + (w,)))
    return dist, route


def _distances_around(
    graph: PlaneGraph,
    metric: Mapping[VertexId, float],
    x: VertexId,
    neighbors: Sequence[VertexId],
    side: Sequence[VertexId],
    blocked: Set[VertexId],
) -> Tuple[float, List[float], Dict[VertexId, Tuple[VertexId, ...]]]:
    """
    Geodesic lengths to one side for x and for each neighbor.

    A neighbor on the side is its own geodesic; a blocked neighbor off the
    side has none. Other neighbors may route through x.
    """
    side_set = set(side)
    dist, route = geodesic_tree(graph, metric, side, blocked | {x})
    m = metric.get(x, 0.0)

    direct: List[float] = []
    for xi in neighbors:
        if xi in side_set:
            direct.append(metric.get(xi, 0.0))
        elif xi in blocked:
            direct.append(INF)
        else:
            direct.append(dist.get(xi, INF))

    d = m if x in side_set else m + min(direct, default=INF)
    through_x: List[float] = []
    for xi, di in zip(neighbors, direct):
        if xi in side_set or xi in blocked:
            through_x.append(di)
        else:
            through_x.append(min(di, metric.get(xi, 0.0) + d))
    return d, through_x, route


# ============================================================================
# Fan selection
# ============================================================================

def _curve_edges(
    x: VertexId,
    xi: VertexId,
    xj: VertexId,
    route: Mapping[VertexId, Tuple[VertexId, ...]],
    side: Sequence[VertexId],
) -> Set[Tuple[VertexId, VertexId]]:
    """Edges of the closed curve x - xi - geodesic - (side arc) - geodesic - xj - x."""
    pi = route[xi]
    pj = route[xj]
    if pi[-1] == pj[-1]:
        on_j = set(pj)
        cut = next(k for k, v in enumerate(pi) if v in on_j)
        meet = pi[cut]
        pi = pi[:cut + 1]
        pj = pj[:pj.index(meet) + 1]
        arc: Tuple[VertexId, ...] = ()
    else:
        i0, i1 = sorted((side.index(pi[-1]), side.index(pj[-1])))
        arc = tuple(side[i0:i1 + 1])

    edges = {edge_key(x, xi), edge_key(x, xj)}
    for path in (pi, pj, arc):
        edges |= {edge_key(u, v) for u, v in zip(path, path[1:])}
    return edges


def _reaches_outer(
    faces: Mapping[Tuple[VertexId, VertexId], Face],
    start: Face,
    outer: Face,
    walls: Set[Tuple[VertexId, VertexId]],
) -> bool:
    """Dual flood fill from start that never crosses a wall edge."""
    seen = {start}
    queue = deque([start])
    while queue:
        face = queue.popleft()
        if face == outer:
            return True
        for u, v in face.darts():
            if edge_key(u, v) in walls:
                continue
            other = faces[(v, u)]
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return False


def select_fan(
    x: VertexId,
    neighbors: Sequence[VertexId],
    in_fan: Sequence[bool],
    route: Mapping[VertexId, Tuple[VertexId, ...]],
    side: Sequence[VertexId],
    faces: Mapping[Tuple[VertexId, VertexId], Face],
    outer: Face,
) -> Tuple[int, int]:
    """
    Rotation offset and fan length.

    Neighbors strictly closer to the side than x, read counterclockwise from
    offset, span positions 1..l; the gap left over faces the outer side of
    the curve formed by the two extreme geodesics.
    """
    s = len(neighbors)
    members = [i for i in range(s) if in_fan[i]]
    if len(members) == 1:
        return members[0], 1

    gaps: List[Tuple[int, int]] = []
    for k, i in enumerate(members):
        j = members[(k + 1) % len(members)]
        gaps.append((i, j))

    outside: Optional[Tuple[int, int]] = None
    for i, j in gaps:
        walls = _curve_edges(x, neighbors[i], neighbors[j], route, side)
        start = faces[(x, neighbors[i])]
        if _reaches_outer(faces, start, outer, walls):
            outside = (i, j)
            break
    if outside is None:
        logger.warning(f"No gap at {x} faces the outer side; using the widest one")
        outside = max(gaps, key=lambda g: ((g[1] - g[0]) % s or s, -g[0]))

    last, first = outside
    length = (last - first) % s + 1
    return first, length


# ============================================================================
# Index sequences and weights
# ============================================================================

def j_sequence(reduced: Sequence[float]) -> Tuple[List[int], int]:
    """
    Monotone index chain over a fan of reduced distances (1-based).

    Returns:
        (j_p, ..., j_0, ..., j_q with j_p = 1 and j_q = l, position of j_0)
    """
    l = len(reduced)

    def first_argmin(lo: int, hi: int) -> int:
        best = min(reduced[lo - 1:hi])
        return next(i for i in range(lo, hi + 1) if reduced[i - 1] == best)

    def last_argmin(lo: int, hi: int) -> int:
        best = min(reduced[lo - 1:hi])
        return next(i for i in range(hi, lo - 1, -1) if reduced[i - 1] == best)

    j0 = first_argmin(1, l)
    forward = [j0]
    while forward[-1] < l:
        forward.append(first_argmin(forward[-1] + 1, l))
    backward: List[int] = []
    current = j0
    while current > 1:
        current = last_argmin(1, current - 1)
        backward.append(current)
    return list(reversed(backward)) + forward, len(backward)


def fan_weights(
    reduced: Sequence[float],
    full: Sequence[float],
    d: float,
    s: int,
) -> Tuple[Dict[int, float], List[int], int]:
    """
    Candidate weights per fan face.

    Face i (1-based) lies between positions i and i+1; face s closes the
    rotation. Reduced distance l+1 is taken to be d.

    Returns:
        (face -> weight, j sequence, position of j_0)
    """
    l = len(reduced)
    js, zero = j_sequence(reduced)

    def red(i: int) -> float:
        return d if i == l + 1 else reduced[i - 1]

    weights: Dict[int, float] = {}

    def offer(face: int, value: float) -> None:
        face = s if face == 0 else face
        weights[face] = max(weights.get(face, 0.0), value)

    ext = js + [l + 1]
    for n in range(zero, len(js)):
        offer(ext[n], max(0.0, red(ext[n + 1]) - full[ext[n] - 1]))

    # below j_0 the chain is read right to left; the step before j_p wraps to l+1
    back = [l + 1] + js
    for n in range(zero + 1):
        jn, jn1 = back[n], back[n + 1]
        offer(jn1 - 1, max(0.0, red(jn) - full[jn1 - 1]))

    return weights, js, zero


def f_profile(reduced: Sequence[float], js: Sequence[int], zero: int, d: float, s: int) -> List[float]:
    """Step function bounding the reduced distances from below (1-based positions 1..s)."""
    l = len(reduced)
    values: List[float] = []
    for i in range(1, s + 1):
        if i > l:
            values.append(d)
            continue
        if i == js[zero]:
            values.append(reduced[js[zero] - 1])
            continue
        value = None
        for n in range(zero):
            if js[n] <= i < js[n + 1]:
                value = reduced[js[n] - 1]
                break
        if value is None:
            for n in range(zero, len(js) - 1):
                if js[n] < i <= js[n + 1]:
                    value = reduced[js[n + 1] - 1]
                    break
        values.append(value if value is not None else d)
    return values


# ============================================================================
# Stages
# ============================================================================

def extend_metric_step(trace: StagedMetricTrace, v_k: Optional[VertexId] = None) -> StagedMetricTrace:
    """
    Process the next vertex of the staged construction (in place).

    Raises:
        PreconditionError: v_k is not the next vertex or the trace is complete
        CertificateError: a stage property fails
    """
    if trace.is_complete:
        raise PreconditionError("Trace is already complete")
    x = trace.next_vertex
    if v_k is not None and v_k != x:
        raise PreconditionError(f"Next vertex is {x}, not {v_k}")

    settings = get_settings()
    sg = trace.base
    graph = trace.graph
    metric = trace.metric
    family = FamilyKind(trace.family)
    a_side, b_side = family_sides(sg, trace.a, trace.b, family)
    blocked = set(sg.boundary) | trace.sealed
    is_boundary = sg.is_boundary(x)

    faces = dart_faces(graph)
    outer = faces[(sg.outer_face.boundary[0], sg.outer_face.boundary[1])]
    neighbors = list(graph.rotation[x])
    s = len(neighbors)
    m = metric.get(x, 0.0)

    d, d_list, route_a = _distances_around(graph, metric, x, neighbors, a_side, blocked)
    e, e_list, _ = _distances_around(graph, metric, x, neighbors, b_side, blocked)

    record = StageRecord(index=len(trace.stages) + 1, vertex=x, is_boundary=is_boundary, m=m, d=d, e=e)

    offset, l = 0, 0
    face_weight: Dict[int, float] = {}
    if m > 0.0 and math.isfinite(d):
        reduced_all = [di - metric.get(xi, 0.0) for xi, di in zip(neighbors, d_list)]
        # a neighbor reached only through x is never closer than x
        in_fan = [xi in route_a and r < d for xi, r in zip(neighbors, reduced_all)]
        offset, l = select_fan(x, neighbors, in_fan, route_a, a_side, faces, outer)
        order = [(offset + t) % s for t in range(s)]
        reduced = [reduced_all[order[t]] for t in range(l)]
        full = [d_list[order[t]] for t in range(l)]
        face_weight, js, zero = fan_weights(reduced, full, d, s)
        record.j_sequence = js
        record.j_zero_position = zero
        f_values = f_profile(reduced, js, zero, d, s)
    else:
        order = list(range(s))
        f_values = [None] * s

    record.fan_length = l
    for t in range(s):
        xi = neighbors[order[t]]
        mi = metric.get(xi, 0.0)
        record.neighbors.append(NeighborRecord(
            vertex=xi,
            m=mi,
            d=d_list[order[t]],
            d_reduced=d_list[order[t]] - mi,
            e=e_list[order[t]],
            e_reduced=e_list[order[t]] - mi,
            f=f_values[t],
        ))

    # new vertices, one per non-triangular interior face at x
    rotation = mutable_rotation(graph)
    taken = set(graph.vertices)
    vertex_order = list(graph.vertices)
    before = dict(metric)
    new_total = 0.0
    for t in range(s):
        position = order[t]
        xi = neighbors[position]
        face = faces[(x, xi)]
        if face == outer or face.is_triangle:
            continue
        x_next = neighbors[(position + 1) % s]
        hub = fresh_vertex_id(taken, STAGED_PREFIX)
        taken.add(hub)
        vertex_order.append(hub)
        insert_corner_hub(rotation, x_next, x, xi, hub)
        delta = face_weight.get(t + 1, 0.0)
        metric[hub] = delta
        new_total += delta
        origin = trace.face_origin.pop(face.boundary)
        replaced = canonical_walk(tuple(hub if v == x else v for v in face.boundary))
        trace.face_origin[replaced] = origin
        trace.hub_owner[hub] = (x, origin)
        record.new_vertices[hub] = delta
        record.new_vertex_faces[hub] = origin.boundary
        if is_boundary:
            trace.sealed.add(hub)

    trace.graph = freeze_rotation(rotation, vertex_order, check_euler=False)

    record.old_values_kept = all(metric[v] == before[v] for v in before)
    record.new_weight_total = new_total
    record.weight_bound_holds = new_total <= 2.0 * m + settings.certificate_tol
    shortest = family_min_length(trace.graph, metric, a_side, b_side, set(sg.boundary) | trace.sealed)
    record.min_length = shortest
    record.admissible = shortest >= 1.0 - settings.admissibility_tol

    trace.stages.append(record)
    logger.debug(
        f"Stage {record.index} at {x}: m={m:.6g}, d={d:.6g}, fan {l}/{s}, "
        f"{len(record.new_vertices)} new, total {new_total:.6g}, shortest {shortest:.9g}"
    )

    checks = (
        ("unchanged old values", record.old_values_kept),
        ("admissibility", record.admissible),
        ("the new weight bound", record.weight_bound_holds),
    )
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise CertificateError(f"Stage {record.index} at {x} breaks {', '.join(failed)}")
    return trace


# ============================================================================
# Projection
# ============================================================================

def quotient_map(trace: StagedMetricTrace, ext: TriangulatedExtension) -> Dict[VertexId, VertexId]:
    """Staged vertices onto their face hubs, originals onto themselves."""
    q = {v: v for v in trace.base.vertices}
    for hub, (_, face) in trace.hub_owner.items():
        q[hub] = ext.added_vertices[face]
    return q


def project_metric(
    trace: StagedMetricTrace,
    ext: Optional[TriangulatedExtension] = None,
) -> ProjectionCertificate:
    """
    Push the staged metric forward onto the hub triangulation.

    Raises:
        PreconditionError: the trace is incomplete
        CertificateError: the pushed metric is not admissible, does not
            vanish on the boundary, or exceeds the area bound
    """
    if not trace.is_complete:
        raise PreconditionError(f"Trace processed {len(trace.stages)} of {len(trace.order)} vertices")
    sg = trace.base
    if ext is None:
        ext = triangulate(sg)

    q = quotient_map(trace, ext)
    projected = {v: 0.0 for v in ext.graph.vertices}
    for v, value in trace.metric.items():
        projected[q[v]] += value

    settings = get_settings()
    family = FamilyKind(trace.family)
    sources, targets = family_sides(ext.graph, trace.a, trace.b, family)
    shortest = family_min_length(ext.graph.graph, projected, sources, targets, set(sg.boundary))

    certificate = ProjectionCertificate(
        metric=projected,
        area_projected=float(sum(x * x for x in projected.values())),
        area_original=float(sum(x * x for x in trace.initial_metric.values())),
        complexity=sg.complexity,
        min_length=shortest,
        admissible=shortest >= 1.0 - settings.admissibility_tol,
        vanishes_on_boundary=all(projected[v] == 0.0 for v in sg.boundary),
    )
    logger.info(
        f"Projection ratio {certificate.ratio:.6g} (bound {certificate.bound}), "
        f"shortest {shortest:.9g}"
    )
    if not certificate.admissible:
        raise CertificateError(f"Projected metric is not admissible (shortest {shortest:.12g})")
    if not certificate.vanishes_on_boundary:
        raise CertificateError("Projected metric is nonzero on the boundary")
    if certificate.ratio > certificate.bound + settings.certificate_tol:
        raise CertificateError(f"Area ratio {certificate.ratio:.9g} exceeds {certificate.bound}")
    return certificate


def run_metric_pipeline(
    sg: SubdivisionGraph,
    a: VertexId,
    b: VertexId,
    metric: Mapping[VertexId, float],
    family: FamilyKind = FamilyKind.CONNECTING,
) -> Tuple[StagedMetricTrace, ProjectionCertificate]:
    """Process every vertex, then project."""
    trace = init_metric_trace(sg, metric, a, b, family)
    while not trace.is_complete:
        extend_metric_step(trace)
    return trace, project_metric(trace)
