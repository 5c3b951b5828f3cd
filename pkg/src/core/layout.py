"""
Pattern Layout
Radius iteration and placement of disk patterns for triangulated
subdivision graphs, residual diagnostics, pattern documents and SVG output.
"""

import json
import logging
import math
from collections import deque
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import svgwrite
from scipy.optimize import brentq

from src.core.generators import flower
from src.core.graph_core import dart_faces
from src.core.settings_manager import get_settings
from src.core.types import ConvergenceError, GraphFormatError, PreconditionError, VertexId
from src.models.coxeter_models import angle_radians
from src.models.geometry_models import Circle, DiskPattern, LayoutDiagnostics
from src.models.subdivision_models import SubdivisionGraph

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
Corner = Tuple[VertexId, VertexId, float, float, float]


# ============================================================================
# Angles
# ============================================================================

def edge_length(r_u: float, r_v: float, cos_omega: float) -> float:
    """Center distance of two disks meeting at angle omega."""
    return math.sqrt(r_u * r_u + r_v * r_v + 2.0 * r_u * r_v * cos_omega)


def corner_angle(a: float, b: float, c: float) -> float:
    """Angle between sides a and b of a triangle with opposite side c."""
    value = (a * a + b * b - c * c) / (2.0 * a * b)
    return math.acos(max(-1.0, min(1.0, value)))


def _edge_cos(sg: SubdivisionGraph, u: VertexId, v: VertexId) -> float:
    return math.cos(angle_radians(sg.weight(u, v)))


def _corners(sg: SubdivisionGraph) -> Dict[VertexId, List[Corner]]:
    """For every interior vertex, its triangles as (v, w, cos uv, cos uw, cos vw)."""
    faces = dart_faces(sg.graph)
    result: Dict[VertexId, List[Corner]] = {}
    for u in sg.interior_vertices:
        corners = []
        for v in sg.graph.rotation[u]:
            face = faces[(u, v)]
            walk = face.boundary
            i = walk.index(u)
            w = walk[(i + 2) % 3]
            corners.append((v, w, _edge_cos(sg, u, v), _edge_cos(sg, u, w), _edge_cos(sg, v, w)))
        result[u] = corners
    return result


def angle_sum(corners: List[Corner], radii: Mapping[VertexId, float], r_u: float) -> float:
    total = 0.0
    for v, w, c_uv, c_uw, c_vw in corners:
        a = edge_length(r_u, radii[v], c_uv)
        b = edge_length(r_u, radii[w], c_uw)
        c = edge_length(radii[v], radii[w], c_vw)
        total += corner_angle(a, b, c)
    return total


def _solve_radius(u: VertexId, corners: List[Corner], radii: Mapping[VertexId, float]) -> float:
    """Radius of u making its angle sum 2pi; the sum strictly decreases in the radius."""
    def excess(r: float) -> float:
        return angle_sum(corners, radii, r) - TWO_PI

    scale = max(radii[v] for v, *_ in corners)
    lo = 1e-12 * scale
    if excess(lo) <= 0.0:
        raise PreconditionError(f"Angle sum at {u} cannot reach 2pi with these weights")
    hi = scale
    for _ in range(200):
        if excess(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise ConvergenceError(f"Could not bracket the radius of {u}")
    return brentq(excess, lo, hi, xtol=1e-15 * scale, rtol=1e-14)


# ============================================================================
# Layout
# ============================================================================

def _validate(sg: SubdivisionGraph, boundary_radii: Mapping[VertexId, float]) -> None:
    for face in sg.interior_faces:
        if not face.is_triangle:
            raise PreconditionError(f"Interior face {list(face.boundary)} is not a triangle; triangulate first")
    for v, r in boundary_radii.items():
        if not sg.is_boundary(v):
            raise PreconditionError(f"{v} is not a boundary vertex")
        if not (r > 0.0 and math.isfinite(r)):
            raise PreconditionError(f"Boundary radius of {v} must be positive, got {r}")


def solve_radii(
    sg: SubdivisionGraph,
    boundary_radii: Mapping[VertexId, float],
) -> Tuple[Dict[VertexId, float], int]:
    """
    Gauss-Seidel sweeps over the interior vertices, each solved exactly.

    Returns:
        (radii, sweeps used)

    Raises:
        ConvergenceError: sweep cap exceeded
    """
    settings = get_settings()
    corners = _corners(sg)
    radii = {v: float(boundary_radii.get(v, 1.0)) for v in sg.boundary}
    start = float(np.mean(list(radii.values())))
    radii.update({v: start for v in sg.interior_vertices})
    interior = sorted(sg.interior_vertices)

    for sweep in range(1, settings.layout_max_iter + 1):
        for u in interior:
            radii[u] = _solve_radius(u, corners[u], radii)
        residual = max((abs(angle_sum(corners[u], radii, radii[u]) - TWO_PI) for u in interior), default=0.0)
        if sweep % 100 == 0:
            logger.debug(f"Sweep {sweep}: angle residual {residual:.3e}")
        if residual <= settings.layout_tol:
            logger.debug(f"Radii converged after {sweep} sweep(s), residual {residual:.3e}")
            return radii, sweep
    raise ConvergenceError(f"Radius iteration did not converge in {settings.layout_max_iter} sweeps")


def place_centers(sg: SubdivisionGraph, radii: Mapping[VertexId, float]) -> Dict[VertexId, complex]:
    """Lay triangles out one by one, breadth first across shared edges."""
    faces = dart_faces(sg.graph)
    first = sg.interior_faces[0]
    u, v, w = first.boundary
    l_uv = edge_length(radii[u], radii[v], _edge_cos(sg, u, v))
    centers: Dict[VertexId, complex] = {u: 0j, v: complex(l_uv, 0.0)}

    def third(p: VertexId, q: VertexId, x: VertexId) -> complex:
        # triangle p, q, x counterclockwise with p and q placed
        a = edge_length(radii[p], radii[q], _edge_cos(sg, p, q))
        b = edge_length(radii[p], radii[x], _edge_cos(sg, p, x))
        c = edge_length(radii[q], radii[x], _edge_cos(sg, q, x))
        direction = (centers[q] - centers[p]) / abs(centers[q] - centers[p])
        return centers[p] + b * direction * complex(math.cos(corner_angle(a, b, c)), math.sin(corner_angle(a, b, c)))

    centers[w] = third(u, v, w)
    interior = set(sg.interior_faces)
    seen = {first}
    queue = deque([first])
    while queue:
        face = queue.popleft()
        for p, q in face.darts():
            other = faces[(q, p)]
            if other in seen or other not in interior:
                continue
            seen.add(other)
            walk = other.boundary
            i = walk.index(q)
            x = walk[(i + 2) % 3]
            if x not in centers:
                centers[x] = third(q, p, x)
            queue.append(other)
    return centers


def thurston_layout(
    sg: SubdivisionGraph,
    boundary_radii: Optional[Mapping[VertexId, float]] = None,
) -> DiskPattern:
    """
    Disk pattern realizing the weighted graph with the given boundary radii.

    Raises:
        PreconditionError: a non-triangular interior face or a bad radius
        ConvergenceError: the radius iteration did not converge
    """
    fixed = {v: 1.0 for v in sg.boundary}
    fixed.update(boundary_radii or {})
    _validate(sg, fixed)

    radii, sweeps = solve_radii(sg, fixed)
    centers = place_centers(sg, radii)
    pattern = DiskPattern(
        disks={v: Circle.from_center(centers[v], radii[v]) for v in sg.vertices},
        source=sg,
        boundary_radii=dict(fixed),
    )
    logger.info(f"Laid out {len(pattern.disks)} disks in {sweeps} sweep(s)")
    return pattern


def layout_residuals(pattern: DiskPattern, sweeps: int = 0) -> LayoutDiagnostics:
    """
    Edge-relation residuals, interior angle-sum residuals and overlapping
    nonadjacent disks.
    """
    sg = pattern.source
    if sg is None:
        raise PreconditionError("Pattern has no source graph")
    diagnostics = LayoutDiagnostics(sweeps=sweeps)
    radii = pattern.radii()

    for u, v in sg.graph.edges:
        du, dv = pattern[u], pattern[v]
        expected = du.r ** 2 + dv.r ** 2 + 2.0 * du.r * dv.r * _edge_cos(sg, u, v)
        actual = abs(du.center - dv.center) ** 2
        diagnostics.edge_residuals[f"{u}-{v}"] = abs(actual - expected) / (du.r + dv.r) ** 2

    if all(f.is_triangle for f in sg.interior_faces):
        corners = _corners(sg)
        for u in sg.interior_vertices:
            diagnostics.angle_residuals[u] = abs(angle_sum(corners[u], radii, radii[u]) - TWO_PI)

    vertices = sorted(sg.vertices)
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            if sg.graph.has_edge(u, v):
                continue
            du, dv = pattern[u], pattern[v]
            if abs(du.center - dv.center) < (du.r + dv.r) * (1.0 - 1e-9):
                diagnostics.overlaps.append((u, v))
    return diagnostics


def flower_subdivision(petals: int, weight_code: int = 0) -> SubdivisionGraph:
    """Center vertex with a ring of petals, every edge carrying weight_code."""
    return flower(petals, weight_code)


# ============================================================================
# Pattern documents
# ============================================================================

def pattern_to_document(pattern: DiskPattern) -> Dict[str, Dict[str, float]]:
    return pattern.to_document()


def pattern_from_document(
    doc: Union[str, bytes, Mapping[str, Any]],
    source: Optional[SubdivisionGraph] = None,
) -> DiskPattern:
    """
    Raises:
        GraphFormatError: malformed JSON, missing fields or invalid circles
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"Pattern document is not valid JSON: {e}") from e
    if isinstance(doc, Mapping) and "disks" in doc and isinstance(doc["disks"], Mapping):
        doc = doc["disks"]
    if not isinstance(doc, Mapping):
        raise GraphFormatError("Pattern document must be an object of {cx, cy, r} entries")

    disks: Dict[VertexId, Circle] = {}
    for v, entry in doc.items():
        try:
            disks[str(v)] = Circle(float(entry["cx"]), float(entry["cy"]), float(entry["r"]))
        except (KeyError, TypeError, ValueError) as e:
            raise GraphFormatError(f"Bad disk entry for {v}: {e}") from e

    if source is not None:
        missing = [v for v in source.vertices if v not in disks]
        if missing:
            raise GraphFormatError(f"Pattern has no disk for {missing[:5]}")
    boundary_radii = {v: disks[v].r for v in source.boundary} if source is not None else {}
    return DiskPattern(disks=disks, source=source, normalization="as given", boundary_radii=boundary_radii)


# ============================================================================
# SVG
# ============================================================================

def _fmt(x: float) -> float:
    return round(float(x), 6) + 0.0


def render_svg(
    pattern: DiskPattern,
    labels: bool = False,
    shade_interstices: bool = False,
    size: int = 600,
) -> str:
    """
    SVG 1.1 document with one circle per disk.

    Boundary disks are outlined, interior disks filled. Shading fills each
    interior triangle of centers underneath the disks, which leaves the
    interstices tinted.
    """
    sg = pattern.source
    boundary = sg.boundary_set if sg is not None else frozenset()
    order = sorted(pattern.disks)

    xs = [pattern[v].cx for v in order]
    ys = [-pattern[v].cy for v in order]
    rs = [pattern[v].r for v in order]
    x0 = min(x - r for x, r in zip(xs, rs))
    y0 = min(y - r for y, r in zip(ys, rs))
    span = max(max(x + r for x, r in zip(xs, rs)) - x0, max(y + r for y, r in zip(ys, rs)) - y0)
    margin = 0.02 * span

    dwg = svgwrite.Drawing(size=(size, size), profile="full", debug=False)
    dwg.viewbox(_fmt(x0 - margin), _fmt(y0 - margin), _fmt(span + 2 * margin), _fmt(span + 2 * margin))
    stroke = _fmt(span / 500.0)

    if shade_interstices and sg is not None:
        shade = dwg.g(id="interstices", fill="#dde8f0", stroke="none")
        for face in sg.interior_faces:
            points = [(_fmt(pattern[v].cx), _fmt(-pattern[v].cy)) for v in face.boundary]
            shade.add(dwg.polygon(points))
        dwg.add(shade)

    disks = dwg.g(id="disks", stroke="#1f2d3d", stroke_width=stroke)
    for v, x, y, r in zip(order, xs, ys, rs):
        if v in boundary:
            disks.add(dwg.circle(center=(_fmt(x), _fmt(y)), r=_fmt(r), fill="none", class_="boundary"))
        else:
            disks.add(dwg.circle(center=(_fmt(x), _fmt(y)), r=_fmt(r), fill="#f2c14e", fill_opacity=0.6))
    dwg.add(disks)

    if labels:
        text = dwg.g(id="labels", font_size=_fmt(span / 40.0), text_anchor="middle")
        for v, x, y in zip(order, xs, ys):
            text.add(dwg.text(v, insert=(_fmt(x), _fmt(y))))
        dwg.add(text)

    return dwg.tostring()
