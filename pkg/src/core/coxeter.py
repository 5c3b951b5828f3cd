"""
Coxeter Graph Predicates
Face classification, completion, realizability conditions and the
connectivity-style predicates for limit sets and acylindricity.

All angle sums are exact: a weight code n stands for pi/n (0 for angle 0)
and sums are Fractions in units of pi.
"""

import itertools
import logging
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from src.core.graph_core import (
    canonical_walk,
    cut_set_witness,
    dart_faces,
    fresh_vertex_id,
    freeze_rotation,
    insert_face_hub,
    mutable_rotation,
    parse_graph_document,
    trace_faces,
)
from src.core.types import (
    CertificateError,
    EdgeKey,
    GraphFormatError,
    PreconditionError,
    Verdict,
    VertexId,
    edge_key,
)
from src.models.coxeter_models import (
    CompletedCoxeterGraph,
    CoxeterGraph,
    CycleViolation,
    FaceClass,
    FaceType,
    NormalizationIssue,
    PrismLabelling,
    RealizabilityReport,
    RealizabilityStatus,
    angle_fraction,
)
from src.models.graph_models import Face, GraphDocument, PlaneGraph

logger = logging.getLogger(__name__)

RIGHT_ANGLE = 2
HAT_PREFIX = "hat"


# ============================================================================
# Construction
# ============================================================================

def make_coxeter_graph(graph: PlaneGraph, weights: Mapping[EdgeKey, int]) -> CoxeterGraph:
    """
    Attach weight codes to a plane graph.

    Raises:
        GraphFormatError: missing weight, weight on a non-edge or bad code
    """
    normalized: Dict[EdgeKey, int] = {}
    for (u, v), code in weights.items():
        if not graph.has_edge(u, v):
            raise GraphFormatError(f"Weight given for non-edge {u}-{v}")
        if isinstance(code, bool) or not isinstance(code, int) or code < 0 or code == 1:
            raise GraphFormatError(f"Weight code must be 0 or an integer >= 2, got {code!r}")
        normalized[edge_key(u, v)] = code
    missing = [e for e in graph.edges if e not in normalized]
    if missing:
        raise GraphFormatError(f"Edges without weight: {[list(e) for e in missing[:5]]}")

    cg = CoxeterGraph(graph=graph, weights=normalized)
    issues = normalization_diagnostics(cg)
    if issues:
        logger.warning(
            f"{len(issues)} pair(s) of triangular parabolic faces share a weight-0 edge; "
            f"first merge suggestion: {list(issues[0].merged_quadrilateral)}"
        )
    return cg


def coxeter_from_document(doc: Union[str, Mapping[str, Any], GraphDocument]) -> CoxeterGraph:
    """CoxeterGraph from a graph document that carries weights."""
    parsed = doc if isinstance(doc, GraphDocument) else parse_graph_document(doc)
    if parsed.weights is None:
        raise GraphFormatError("A Coxeter graph document needs 'weights'")
    return make_coxeter_graph(parsed.graph, parsed.weights)


# ============================================================================
# Face classification
# ============================================================================

def face_weight_sum(cg: CoxeterGraph, face: Face) -> Fraction:
    """Sum of the angles along the face's sides, in units of pi."""
    return sum((angle_fraction(cg.weights[e]) for e in face.sides()), Fraction(0))


def classify_face(cg: CoxeterGraph, face: Face) -> FaceClass:
    """Elliptic, parabolic or hyperbolic, with the exact weight sum."""
    total = face_weight_sum(cg, face)
    n = face.side_count
    if n == 3 and total > 1:
        kind = FaceType.ELLIPTIC
    elif total == n - 2:
        kind = FaceType.PARABOLIC
    else:
        kind = FaceType.HYPERBOLIC
    return FaceClass(kind=kind, weight_sum=total, side_count=n)


def classify_faces(cg: CoxeterGraph) -> Dict[Face, FaceClass]:
    """Classify every face of the graph."""
    return {face: classify_face(cg, face) for face in trace_faces(cg.graph)}


def faces_of_type(cg: CoxeterGraph, kind: FaceType) -> List[Face]:
    return [f for f, c in classify_faces(cg).items() if c.kind == kind]


def normalization_diagnostics(cg: CoxeterGraph) -> List[NormalizationIssue]:
    """Adjacent triangular parabolic faces sharing a weight-0 edge."""
    by_dart = dart_faces(cg.graph)
    issues: List[NormalizationIssue] = []
    for (u, v), code in sorted(cg.weights.items()):
        if code != 0:
            continue
        left, right = by_dart[(u, v)], by_dart[(v, u)]
        if left == right or not (left.is_triangle and right.is_triangle):
            continue
        if classify_face(cg, left).kind != FaceType.PARABOLIC:
            continue
        if classify_face(cg, right).kind != FaceType.PARABOLIC:
            continue
        p = next(w for w in left.boundary if w not in (u, v))
        q = next(w for w in right.boundary if w not in (u, v))
        # left runs u -> v -> p, right runs v -> u -> q
        merged = canonical_walk((v, p, u, q))
        issues.append(NormalizationIssue(shared_edge=(u, v), faces=(left, right), merged_quadrilateral=merged))
    return issues


# ============================================================================
# Completion
# ============================================================================

def _is_right_angled_quad_cycle(cg: CoxeterGraph) -> bool:
    g = cg.graph
    return (
        g.num_vertices == 4
        and g.num_edges == 4
        and all(code == RIGHT_ANGLE for code in cg.weights.values())
    )


def completion(cg: Union[CoxeterGraph, CompletedCoxeterGraph]) -> CompletedCoxeterGraph:
    """
    Add weight-0 diagonals to every quadrilateral parabolic face.

    A diagonal that is already an edge is skipped. For the 4-cycle with all
    right angles only the first face is completed. Completing a completion
    returns it unchanged.
    """
    if isinstance(cg, CompletedCoxeterGraph):
        return cg

    quads = [
        f for f, c in classify_faces(cg).items()
        if c.kind == FaceType.PARABOLIC and f.side_count == 4 and f.is_jordan
    ]
    if _is_right_angled_quad_cycle(cg):
        quads = quads[:1]

    extra: List[EdgeKey] = []
    extraneous: List[Tuple[VertexId, VertexId, VertexId]] = []
    for face in quads:
        v1, v2, v3, v4 = face.boundary
        for a, b in ((v1, v3), (v2, v4)):
            key = edge_key(a, b)
            if not cg.graph.has_edge(a, b) and key not in extra:
                extra.append(key)
        for triple in itertools.combinations(sorted(face.boundary), 3):
            if triple not in extraneous:
                extraneous.append(triple)

    if extra:
        logger.debug(f"Completion adds {len(extra)} diagonal(s) in {len(quads)} parabolic quadrilateral(s)")
    return CompletedCoxeterGraph(base=cg, extra_edges=tuple(extra), extraneous_faces=tuple(extraneous))


# ============================================================================
# Realizability
# ============================================================================

def _canonical_cycle(cycle: Sequence[VertexId]) -> Tuple[VertexId, ...]:
    return min(canonical_walk(cycle), canonical_walk(tuple(reversed(cycle))))


def short_cycles(vertices: Iterable[VertexId], edges: Iterable[EdgeKey], length: int) -> List[Tuple[VertexId, ...]]:
    """All simple cycles of exactly the given length, each once, canonical form."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    found: Set[Tuple[VertexId, ...]] = set()
    for cycle in nx.simple_cycles(graph, length_bound=length):
        if len(cycle) == length:
            found.add(_canonical_cycle(cycle))
    return sorted(found)


def _cycle_sum(weight_of, cycle: Sequence[VertexId]) -> Fraction:
    n = len(cycle)
    return sum((angle_fraction(weight_of(cycle[i], cycle[(i + 1) % n])) for i in range(n)), Fraction(0))


def kat_violations(cg: CoxeterGraph) -> List[CycleViolation]:
    """
    Cycles breaking the two realizability conditions on the completion.

    (A) a 3-cycle with angle sum >= pi must be a triangular face or an
        extraneous triangle of the completion;
    (B) a 4-cycle with angle sum 2pi must bound a parabolic quadrilateral or
        two elliptic triangles sharing a diagonal.
    """
    done = completion(cg)
    classes = classify_faces(cg)

    triangle_faces: Set[FrozenSet[VertexId]] = {f.vertex_set for f in classes if f.is_triangle}
    triangle_faces |= {frozenset(t) for t in done.extraneous_faces}
    elliptic: Set[FrozenSet[VertexId]] = {
        f.vertex_set for f, c in classes.items() if c.kind == FaceType.ELLIPTIC
    }
    parabolic_quads: Set[Tuple[VertexId, ...]] = {
        _canonical_cycle(f.boundary) for f, c in classes.items()
        if c.kind == FaceType.PARABOLIC and f.side_count == 4
    }

    violations: List[CycleViolation] = []
    edges = done.edges()

    for cycle in short_cycles(cg.vertices, edges, 3):
        total = _cycle_sum(done.weight, cycle)
        if total >= 1 and frozenset(cycle) not in triangle_faces:
            violations.append(CycleViolation(condition="A", cycle=cycle, weight_sum=total))

    for cycle in short_cycles(cg.vertices, edges, 4):
        total = _cycle_sum(done.weight, cycle)
        if total != 2:
            continue
        if cycle in parabolic_quads:
            continue
        v1, v2, v3, v4 = cycle
        split = False
        for (p, q), (r, s) in (((v1, v3), (v2, v4)), ((v2, v4), (v1, v3))):
            if not cg.graph.has_edge(p, q):
                continue
            if frozenset((p, q, r)) in elliptic and frozenset((p, q, s)) in elliptic:
                split = True
                break
        if not split:
            violations.append(CycleViolation(condition="B", cycle=cycle, weight_sum=total))

    return violations


def is_prism_graph(cg: CoxeterGraph) -> Optional[PrismLabelling]:
    """
    Labelling (a, b, equator) when the graph is the triangular bipyramid.

    a and b are the two nonadjacent degree-3 vertices, each joined to the
    three equator vertices, which form a triangle.
    """
    g = cg.graph
    if g.num_vertices != 5 or g.num_edges != 9:
        return None
    poles = sorted(v for v in g.vertices if g.degree(v) == 3)
    if len(poles) != 2 or g.has_edge(*poles):
        return None
    equator = tuple(sorted(v for v in g.vertices if v not in poles))
    if not all(g.has_edge(p, q) for p, q in itertools.combinations(equator, 2)):
        return None
    if not all(g.has_edge(p, v) for p in poles for v in equator):
        return None
    return PrismLabelling(a=poles[0], b=poles[1], equator=equator)


def prism_violations(cg: CoxeterGraph, labels: PrismLabelling) -> List[CycleViolation]:
    """Conditions (I) and (II) for the triangular bipyramid."""
    w = cg.angle
    a, b = labels.a, labels.b
    v1, v2, v3 = labels.equator
    violations: List[CycleViolation] = []

    equator_sum = w(v1, v2) + w(v2, v3) + w(v3, v1)
    if not equator_sum < 1:
        violations.append(CycleViolation(condition="I", cycle=(v1, v2, v3), weight_sum=equator_sum))

    for vi, vj, vk in itertools.permutations(labels.equator):
        lens = w(a, vi) + w(vi, b) + w(b, vj) + w(vj, a)
        through_poles = lens + w(a, vk) + w(vk, b)
        through_equator = lens + w(vi, vk) + w(vk, vj)
        if not through_poles < 3:
            violations.append(CycleViolation(condition="II", cycle=(a, vi, b, vj, vk), weight_sum=through_poles))
        if not through_equator < 3:
            violations.append(CycleViolation(condition="II", cycle=(a, vi, vk, vj, b), weight_sum=through_equator))

    return violations


def check_realizable(cg: CoxeterGraph) -> RealizabilityReport:
    """
    Decide realizability where an implemented criterion applies.

    Graphs with a hyperbolic face or at least 6 vertices use conditions
    (A)/(B). The triangular bipyramid without hyperbolic faces uses
    conditions (I)/(II). Anything else is reported undecided, together with
    whether (A)/(B) hold.
    """
    classes = classify_faces(cg)
    has_hyperbolic = any(c.kind == FaceType.HYPERBOLIC for c in classes.values())

    if has_hyperbolic or cg.graph.num_vertices >= 6:
        violations = kat_violations(cg)
        status = RealizabilityStatus.NOT_REALIZABLE if violations else RealizabilityStatus.REALIZABLE
        logger.debug(f"Realizability via (A)/(B): {status.value}, {len(violations)} violation(s)")
        return RealizabilityReport(
            status=status,
            route="kat",
            conditions_hold=not violations,
            violations=violations,
            reason="" if not violations else f"condition ({violations[0].condition}) fails",
        )

    labels = is_prism_graph(cg)
    if labels is not None:
        violations = prism_violations(cg, labels)
        status = RealizabilityStatus.NOT_REALIZABLE if violations else RealizabilityStatus.REALIZABLE
        return RealizabilityReport(
            status=status,
            route="prism",
            conditions_hold=not violations,
            violations=violations,
            reason="" if not violations else f"condition ({violations[0].condition}) fails",
        )

    violations = kat_violations(cg)
    return RealizabilityReport(
        status=RealizabilityStatus.UNDECIDED,
        route="none",
        conditions_hold=not violations,
        violations=violations,
        reason="undecided by implemented criteria: fewer than 6 vertices and no hyperbolic face",
    )


# ============================================================================
# Connections
# ============================================================================

def elliptic_connections(cg: CoxeterGraph) -> List[Tuple[EdgeKey, Face]]:
    """Positively weighted edges joining nonconsecutive vertices of a hyperbolic face."""
    found: Dict[EdgeKey, Face] = {}
    for face, cls in classify_faces(cg).items():
        if cls.kind != FaceType.HYPERBOLIC:
            continue
        consecutive = set(face.sides())
        for u, v in itertools.combinations(sorted(face.vertex_set), 2):
            key = edge_key(u, v)
            if key in consecutive or key in found:
                continue
            if cg.graph.has_edge(u, v) and cg.weights[key] > 0:
                found[key] = face
    return sorted(found.items())


def right_angled_2_connections(cg: CoxeterGraph) -> List[Tuple[VertexId, VertexId, VertexId]]:
    """Paths v-x-w with v, w nonadjacent on a hyperbolic face and x off it, both angles pi/2."""
    paths: Set[Tuple[VertexId, VertexId, VertexId]] = set()
    g = cg.graph
    for face, cls in classify_faces(cg).items():
        if cls.kind != FaceType.HYPERBOLIC:
            continue
        on_face = face.vertex_set
        consecutive = set(face.sides())
        for v, w in itertools.combinations(sorted(on_face), 2):
            if edge_key(v, w) in consecutive:
                continue
            common = set(g.neighbors(v)) & set(g.neighbors(w))
            for x in sorted(common - on_face):
                if cg.weight(x, v) == RIGHT_ANGLE and cg.weight(x, w) == RIGHT_ANGLE:
                    paths.add((v, x, w))
    return sorted(paths)


# ============================================================================
# Limit set and acylindricity
# ============================================================================

def limit_set_connected(cg: CoxeterGraph) -> Verdict:
    """2-connected and free of elliptic connections (realizability assumed)."""
    if cg.graph.num_vertices <= 2:
        return Verdict.failed("fewer than 3 vertices; not 2-connected", witness=list(cg.vertices))
    cut = cut_set_witness(cg.graph, 2)
    if cut is not None:
        return Verdict.failed("not 2-connected", witness=list(cut))
    connections = elliptic_connections(cg)
    if connections:
        edge, face = connections[0]
        return Verdict.failed(
            "elliptic connection",
            witness={"edge": list(edge), "face": list(face.boundary)},
        )
    return Verdict.passed("2-connected without elliptic connections")


def tetrahedron_criterion(apex_codes: Sequence[int]) -> bool:
    """Strict test: angles of the three apex edges sum to less than pi."""
    return sum((angle_fraction(code) for code in apex_codes), Fraction(0)) < 1


def is_acylindrical(cg: CoxeterGraph) -> Verdict:
    """
    Acylindricity of the reflection group of a realizable Coxeter graph.

    A tetrahedron with a single hyperbolic face is decided by its three apex
    angles; every other graph must be 3-connected without right-angled
    2-connections.

    Raises:
        PreconditionError: fewer than 4 vertices
    """
    g = cg.graph
    if g.num_vertices < 4:
        raise PreconditionError(f"Acylindricity needs at least 4 vertices, got {g.num_vertices}")

    hyperbolic = faces_of_type(cg, FaceType.HYPERBOLIC)
    if not hyperbolic:
        return Verdict.passed("no hyperbolic face")

    if g.num_vertices == 4 and g.num_edges == 6 and len(hyperbolic) == 1:
        base = hyperbolic[0].vertex_set
        apex = next(v for v in g.vertices if v not in base)
        codes = [cg.weight(apex, v) for v in sorted(base)]
        total = sum((angle_fraction(c) for c in codes), Fraction(0))
        witness = {"apex": apex, "codes": codes, "weight_sum": [total.numerator, total.denominator]}
        if tetrahedron_criterion(codes):
            return Verdict(ok=True, reason="apex angles sum below pi", witness=witness)
        return Verdict.failed("apex angles sum to at least pi", witness=witness)

    cut = cut_set_witness(g, 3)
    if cut is not None:
        return Verdict.failed("not 3-connected", witness=list(cut))

    if elliptic_connections(cg):
        raise CertificateError("3-connected graph reports an elliptic connection")

    connections = right_angled_2_connections(cg)
    if connections:
        return Verdict.failed("right-angled 2-connection", witness=list(connections[0]))
    return Verdict.passed("3-connected without right-angled 2-connections")


def hat_graph(cg: CoxeterGraph) -> CoxeterGraph:
    """
    Cone off every hyperbolic face with a new vertex joined at right angles.

    Raises:
        PreconditionError: a hyperbolic face is not a Jordan domain
        CertificateError: the result still has a hyperbolic face
    """
    hyperbolic = faces_of_type(cg, FaceType.HYPERBOLIC)
    if not hyperbolic:
        return cg
    for face in hyperbolic:
        if not face.is_jordan:
            raise PreconditionError(f"Hyperbolic face {list(face.boundary)} is not a Jordan domain")

    rotation = mutable_rotation(cg.graph)
    weights = dict(cg.weights)
    taken = set(cg.vertices)
    order = list(cg.vertices)
    for face in hyperbolic:
        hub = fresh_vertex_id(taken, HAT_PREFIX)
        taken.add(hub)
        order.append(hub)
        insert_face_hub(rotation, face.boundary, hub)
        for v in face.boundary:
            weights[edge_key(hub, v)] = RIGHT_ANGLE

    result = CoxeterGraph(graph=freeze_rotation(rotation, order), weights=weights)
    if faces_of_type(result, FaceType.HYPERBOLIC):
        raise CertificateError("Hat graph still has a hyperbolic face")
    logger.debug(f"Hat graph adds {len(hyperbolic)} vertex(es)")
    return result


def topological_complexity(cg: CoxeterGraph) -> int:
    """Largest side count of a hyperbolic face."""
    hyperbolic = faces_of_type(cg, FaceType.HYPERBOLIC)
    if not hyperbolic:
        raise PreconditionError("Graph has no hyperbolic face")
    return max(f.side_count for f in hyperbolic)
