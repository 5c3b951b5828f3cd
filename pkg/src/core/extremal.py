"""
Vertex Extremal Width
Cutting-plane and brute-force solvers for the vertex extremal width of
proper path families, plus the duality and projection reports built on them.
"""

import logging
import math
from typing import Collection, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import nnls

from src.constants.tolerances import TOLERANCES
from src.core.metric_extension import family_sides, run_metric_pipeline
from src.core.path_oracle import enumerate_paths, shortest_path
from src.core.settings_manager import get_settings
from src.core.subdivision import check_boundary_pair, nonadjacent_boundary_pairs, triangulate
from src.core.types import (
    CertificateError,
    ConvergenceError,
    OracleSizeError,
    PreconditionError,
    VertexId,
)
from src.models.extremal_models import (
    DualityReport,
    EWResult,
    EWStatus,
    FamilyKind,
    FamilySpec,
    ProjectionReport,
    VertexMetric,
)
from src.models.graph_models import Path, PlaneGraph
from src.models.subdivision_models import SubdivisionGraph

logger = logging.getLogger(__name__)

Constraint = FrozenSet[VertexId]


# ============================================================================
# Lengths and the separation oracle
# ============================================================================

def path_length(
    metric: Union[VertexMetric, Mapping[VertexId, float]],
    path: Union[Path, Sequence[VertexId]],
    graph: Optional[PlaneGraph] = None,
) -> float:
    """
    Sum of the metric over every vertex of the path, endpoints included.

    Raises:
        PreconditionError: a vertex is not in graph (when graph is given)
    """
    vertices = path.vertices if isinstance(path, Path) else tuple(path)
    if graph is not None:
        missing = [v for v in vertices if not graph.has_vertex(v)]
        if missing:
            raise PreconditionError(f"Path leaves the graph at {missing}")
    values = metric.values if isinstance(metric, VertexMetric) else metric
    return float(sum(values.get(v, 0.0) for v in vertices))


def _check_spec(sg: SubdivisionGraph, spec: FamilySpec) -> None:
    check_boundary_pair(sg, spec.a, spec.b)


def shortest_proper_path(
    sg: SubdivisionGraph,
    metric: Union[VertexMetric, Mapping[VertexId, float]],
    spec: FamilySpec,
) -> Optional[Tuple[Path, float]]:
    """
    Cheapest member of the family under metric.

    Returns:
        (path, length), or None when the family is empty
    """
    _check_spec(sg, spec)
    values = metric.values if isinstance(metric, VertexMetric) else metric
    sources, targets = family_sides(sg, spec.a, spec.b, spec.kind)
    found = shortest_path(
        sg.graph.rotation,
        lambda v: values.get(v, 0.0),
        sources,
        targets,
        blocked=sg.boundary_set,
    )
    if found is None:
        return None
    vertices, length = found
    return Path(vertices=vertices), length


# ============================================================================
# Least-norm subproblem
# ============================================================================

def _least_norm(rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Minimize |mu|^2 subject to rows @ mu >= 1 as a least-distance program.

    Returns:
        (mu, multipliers) with 2 mu = rows.T @ multipliers at the optimum
    """
    k, n = rows.shape
    e = np.vstack([rows.T, np.ones((1, k))])
    f = np.zeros(n + 1)
    f[n] = 1.0
    u, _ = nnls(e, f)
    r = e @ u - f
    if abs(r[n]) < 1e-300:
        raise ConvergenceError("Least-distance subproblem is infeasible")
    mu = np.maximum(-r[:n] / r[n], 0.0)
    multipliers = 2.0 * u / (1.0 - u.sum())
    return mu, multipliers


def _duality_gap(mu: np.ndarray, multipliers: np.ndarray) -> float:
    return abs(2.0 * float(mu @ mu) - float(multipliers.sum()))


def _add_constraint(pool: Dict[Constraint, Tuple[VertexId, ...]], key: Constraint, path: Tuple[VertexId, ...]) -> bool:
    """Insert a constraint unless it is dominated; drop the ones it dominates."""
    if any(existing <= key for existing in pool):
        return False
    for existing in [c for c in pool if key < c]:
        del pool[existing]
    pool[key] = path
    return True


def _relative_set(sg: SubdivisionGraph, relative: Optional[Collection[VertexId]]) -> FrozenSet[VertexId]:
    return sg.boundary_set if relative is None else frozenset(relative)


def _degenerate(status: EWStatus, path: Optional[Tuple[VertexId, ...]], method: str) -> EWResult:
    if status == EWStatus.EMPTY_FAMILY:
        return EWResult(width=0.0, metric=VertexMetric({}), status=status, min_length=math.inf, method=method)
    return EWResult(
        width=math.inf,
        metric=VertexMetric({}),
        status=status,
        active_paths=[path] if path else [],
        min_length=0.0,
        method=method,
    )


# ============================================================================
# Cutting-plane solver
# ============================================================================

def extremal_width(
    sg: SubdivisionGraph,
    spec: FamilySpec,
    relative: Optional[Collection[VertexId]] = None,
) -> EWResult:
    """
    Vertex extremal width of a proper path family relative to a vertex set.

    Starts from the unit metric, adds the shortest path as a cut whenever it
    is shorter than 1, and re-solves the least-norm problem over the
    accumulated cuts. Cuts are keyed by their vertices outside the relative
    set.

    Args:
        sg: Host subdivision graph
        spec: Connecting or separating family of a boundary pair
        relative: Vertices where the metric must vanish (default the boundary)

    Raises:
        PreconditionError: invalid pair
        ConvergenceError: cut cap exceeded
    """
    _check_spec(sg, spec)
    settings = get_settings()
    fixed = _relative_set(sg, relative)
    free = sorted(v for v in sg.vertices if v not in fixed)
    index = {v: i for i, v in enumerate(free)}

    metric: Dict[VertexId, float] = {v: (0.0 if v in fixed else 1.0) for v in sg.vertices}
    found = shortest_proper_path(sg, metric, spec)
    if found is None:
        logger.info(f"{spec.kind.value} family of ({spec.a}, {spec.b}) is empty")
        return _degenerate(EWStatus.EMPTY_FAMILY, None, "cutting-plane")

    pool: Dict[Constraint, Tuple[VertexId, ...]] = {}
    gap = 0.0
    cuts = 0
    while True:
        path, length = found
        key = frozenset(v for v in path.vertices if v not in fixed)
        if not key:
            logger.info(f"Family of ({spec.a}, {spec.b}) contains the zero-length path {list(path.vertices)}")
            return _degenerate(EWStatus.UNBOUNDED_CHORD, path.vertices, "cutting-plane")
        if not _add_constraint(pool, key, path.vertices):
            raise ConvergenceError(f"Oracle returned a dominated cut at length {length:.12g}")
        cuts += 1
        if cuts > settings.max_cuts:
            raise ConvergenceError(f"No convergence after {settings.max_cuts} cuts")

        rows = np.zeros((len(pool), len(free)))
        for r, constraint in enumerate(pool):
            for v in constraint:
                rows[r, index[v]] = 1.0
        mu, multipliers = _least_norm(rows)
        gap = _duality_gap(mu, multipliers)
        metric = {v: 0.0 for v in sg.vertices}
        metric.update({v: float(mu[index[v]]) for v in free})

        found = shortest_proper_path(sg, metric, spec)
        logger.debug(f"Cut {cuts}: area {float(mu @ mu):.12g}, oracle length {found[1]:.12g}")
        if found[1] >= 1.0 - settings.admissibility_tol:
            break

    values = np.array([metric[v] for v in free])
    active = [p for c, p in pool.items() if abs(sum(metric[v] for v in c) - 1.0) <= 1e-9]
    result = EWResult(
        width=float(values @ values),
        metric=VertexMetric(metric),
        active_paths=active,
        iterations=cuts,
        gap=gap,
        min_length=found[1],
    )
    logger.info(
        f"EW {spec.kind.value}({spec.a}, {spec.b}) = {result.width:.12g} after {cuts} cuts"
    )
    return result


# ============================================================================
# Brute-force oracle
# ============================================================================

def minimal_constraints(
    sg: SubdivisionGraph,
    spec: FamilySpec,
    fixed: FrozenSet[VertexId],
) -> Dict[Constraint, Tuple[VertexId, ...]]:
    """Inclusion-minimal free-vertex sets over every simple member of the family."""
    sources, targets = family_sides(sg, spec.a, spec.b, spec.kind)
    pool: Dict[Constraint, Tuple[VertexId, ...]] = {}
    for path in enumerate_paths(sg.graph.rotation, sources, targets, blocked=sg.boundary_set):
        _add_constraint(pool, frozenset(v for v in path if v not in fixed), path)
    return pool


def extremal_width_bruteforce(
    sg: SubdivisionGraph,
    spec: FamilySpec,
    relative: Optional[Collection[VertexId]] = None,
) -> EWResult:
    """
    Exact width from the full constraint set.

    Every simple member of the family is enumerated, the least-norm problem
    is solved over all of their minimal constraints at once, and the
    optimality conditions are verified on the solution.

    Raises:
        OracleSizeError: too many free vertices
        CertificateError: the solution fails the optimality conditions
    """
    _check_spec(sg, spec)
    settings = get_settings()
    fixed = _relative_set(sg, relative)
    free = sorted(v for v in sg.vertices if v not in fixed)
    if len(free) > settings.bruteforce_cap:
        raise OracleSizeError(f"{len(free)} free vertices exceed the cap of {settings.bruteforce_cap}")

    pool = minimal_constraints(sg, spec, fixed)
    if not pool:
        return _degenerate(EWStatus.EMPTY_FAMILY, None, "brute-force")
    if frozenset() in pool:
        return _degenerate(EWStatus.UNBOUNDED_CHORD, pool[frozenset()], "brute-force")
    index = {v: i for i, v in enumerate(free)}
    keys = sorted(pool, key=lambda c: sorted(c))
    rows = np.zeros((len(keys), len(free)))
    for r, constraint in enumerate(keys):
        for v in constraint:
            rows[r, index[v]] = 1.0

    mu, multipliers = _least_norm(rows)
    lengths = rows @ mu
    tol = TOLERANCES.bruteforce
    if np.any(multipliers < -tol):
        raise CertificateError(f"Negative multiplier {float(multipliers.min()):.3g}")
    if np.any(lengths < 1.0 - tol):
        raise CertificateError(f"Constraint violated at length {float(lengths.min()):.12g}")
    active = multipliers > tol
    if np.any(np.abs(lengths[active] - 1.0) > tol):
        raise CertificateError("A constraint with a positive multiplier is slack")
    if np.any(np.abs(2.0 * mu - rows.T @ multipliers) > tol * max(1.0, float(multipliers.sum()))):
        raise CertificateError("Metric is not stationary for the multipliers")

    metric = {v: 0.0 for v in sg.vertices}
    metric.update({v: float(mu[index[v]]) for v in free})
    logger.debug(f"Brute force solved {len(keys)} minimal constraint(s), {int(active.sum())} active")
    return EWResult(
        width=float(mu @ mu),
        metric=VertexMetric(metric),
        active_paths=[pool[keys[i]] for i in np.flatnonzero(active)],
        iterations=len(keys),
        gap=_duality_gap(mu, multipliers),
        min_length=float(lengths.min()),
        method="brute-force",
    )


def solve_width(sg: SubdivisionGraph, spec: FamilySpec, oracle: bool = False) -> EWResult:
    """Cutting-plane width, cross-checked against the brute-force oracle when asked."""
    result = extremal_width(sg, spec)
    if oracle:
        exact = extremal_width_bruteforce(sg, spec)
        if exact.status != result.status:
            raise CertificateError(f"Solver status {result.status.value} differs from oracle {exact.status.value}")
        if result.status == EWStatus.OPTIMAL and abs(exact.width - result.width) > TOLERANCES.duality:
            raise CertificateError(f"Solver width {result.width:.12g} differs from oracle {exact.width:.12g}")
    return result


# ============================================================================
# Reports
# ============================================================================

def default_pair(sg: SubdivisionGraph) -> Tuple[VertexId, VertexId]:
    """First boundary pair not consecutive on the boundary cycle."""
    pairs = nonadjacent_boundary_pairs(sg)
    if not pairs:
        raise PreconditionError("Boundary has no nonadjacent pair")
    return pairs[0]


def duality_report(
    sg: SubdivisionGraph,
    a: Optional[VertexId] = None,
    b: Optional[VertexId] = None,
    oracle: bool = False,
) -> DualityReport:
    """
    Widths of the connecting and separating families of (a, b) and their product.

    For a triangulation the product must be 1; otherwise it must lie in
    [1/(4N+1)^2, 1] with N the subdivision complexity.
    """
    if a is None or b is None:
        a, b = default_pair(sg)
    check_boundary_pair(sg, a, b)

    connecting = solve_width(sg, FamilySpec.connecting(a, b), oracle)
    separating = solve_width(sg, FamilySpec.separating(a, b), oracle)
    n = sg.complexity
    report = DualityReport(
        a=a,
        b=b,
        connecting=connecting,
        separating=separating,
        complexity=n,
        triangulated=sg.is_triangulated,
        lower_bound=1.0 / (4 * n + 1) ** 2,
    )

    degenerate = [r.status.value for r in (connecting, separating) if r.status != EWStatus.OPTIMAL]
    if degenerate:
        report.degenerate = ", ".join(degenerate)
        logger.warning(f"Degenerate families for ({a}, {b}): {report.degenerate}")
        return report

    product = connecting.width * separating.width
    report.product = product
    if report.triangulated:
        report.holds = abs(product - 1.0) <= TOLERANCES.duality
    else:
        report.holds = report.lower_bound - TOLERANCES.quasi_duality_low <= product <= 1.0 + TOLERANCES.duality

    length = connecting.length
    scale = (4 * n + 1) ** 2
    slack = TOLERANCES.duality * max(1.0, length)
    report.corollary_holds = (
        length <= scale * separating.width + slack * scale
        and separating.width <= length + slack
    )
    logger.info(f"Duality ({a}, {b}): product {product:.12g}, holds {report.holds}")
    return report


def _sandwich(width_g: float, width_t: float, factor: int) -> bool:
    slack = TOLERANCES.duality * max(1.0, width_t)
    return width_g <= width_t + slack and width_t <= factor * width_g + slack


def verify_projection_bound(
    sg: SubdivisionGraph,
    a: Optional[VertexId] = None,
    b: Optional[VertexId] = None,
) -> ProjectionReport:
    """
    Compare widths on the subdivision and on its hub triangulation for both
    families, and run the staged metric pipeline on each extremal metric.

    Raises:
        PreconditionError: a family is empty or contains a chord
    """
    if a is None or b is None:
        a, b = default_pair(sg)
    check_boundary_pair(sg, a, b)

    ext = triangulate(sg)
    n = sg.complexity
    factor = 4 * n + 1
    report = ProjectionReport(a=a, b=b, complexity=n)

    for kind in (FamilyKind.CONNECTING, FamilyKind.SEPARATING):
        spec = FamilySpec(kind, a, b)
        on_g = extremal_width(sg, spec)
        on_t = extremal_width(ext.graph, spec)
        for result in (on_g, on_t):
            if result.status != EWStatus.OPTIMAL:
                raise PreconditionError(f"{kind.value} family of ({a}, {b}) is degenerate: {result.status.value}")

        report.widths[kind.value] = {"subdivision": on_g.width, "triangulation": on_t.width}
        report.sandwich[kind.value] = _sandwich(on_g.width, on_t.width, factor)

        try:
            trace, certificate = run_metric_pipeline(sg, a, b, on_g.metric.values, kind)
            entry = certificate.to_dict()
            entry["stages"] = len(trace.stages)
            entry["stage_checks"] = all(s.checks_hold for s in trace.stages)
        except CertificateError as e:
            logger.error(f"Metric pipeline failed for the {kind.value} family: {e}")
            entry = {"holds": False, "error": str(e)}
        report.certificates[kind.value] = entry

    logger.info(f"Projection bound ({a}, {b}) with factor {factor}: holds {report.holds}")
    return report
