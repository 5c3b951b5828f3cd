"""
Annulus Geometry
Inversive distance, Mobius normalization of two disjoint circles to the
boundary of a round annulus, extremal width of circular rectangles,
admissible disks and the circular width of the skinning interstice.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.extremal import extremal_width
from src.core.settings_manager import get_settings
from src.core.subdivision import check_boundary_pair
from src.core.types import CertificateError, PreconditionError, VertexId
from src.constants.tolerances import TOLERANCES
from src.models.coxeter_models import angle_radians
from src.models.extremal_models import FamilySpec
from src.models.geometry_models import (
    Circle,
    CircularRectangle,
    DiskAdmissibility,
    DiskPattern,
    MobiusMap,
    SkinningEstimate,
)
from src.models.subdivision_models import SubdivisionGraph

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
Interval = Tuple[float, float]


# ============================================================================
# Circles under Mobius maps
# ============================================================================

def inversive_distance(c1: Circle, c2: Circle) -> float:
    """
    Mobius invariant of two circles; greater than 1 iff their closed disks
    are disjoint or strictly nested.
    """
    d2 = abs(c1.center - c2.center) ** 2
    if math.sqrt(d2) < abs(c1.r - c2.r):
        return (c1.r ** 2 + c2.r ** 2 - d2) / (2.0 * c1.r * c2.r)
    return abs(d2 - c1.r ** 2 - c2.r ** 2) / (2.0 * c1.r * c2.r)


def circumcircle(z1: complex, z2: complex, z3: complex) -> Circle:
    """
    Raises:
        PreconditionError: the points are collinear
    """
    a = np.array([
        [2.0 * (z2 - z1).real, 2.0 * (z2 - z1).imag],
        [2.0 * (z3 - z1).real, 2.0 * (z3 - z1).imag],
    ])
    rhs = np.array([abs(z2) ** 2 - abs(z1) ** 2, abs(z3) ** 2 - abs(z1) ** 2])
    scale = max(abs(z1), abs(z2), abs(z3), 1.0)
    if abs(np.linalg.det(a)) < 1e-14 * scale ** 2:
        raise PreconditionError("Image points are collinear")
    cx, cy = np.linalg.solve(a, rhs)
    center = complex(cx, cy)
    return Circle.from_center(center, abs(z1 - center))


def circle_image(m: MobiusMap, circle: Circle) -> Tuple[Circle, bool]:
    """
    Image of a circle, through three of its points.

    Returns:
        (image circle, True when the disk maps onto the outside of it)

    Raises:
        PreconditionError: the circle passes through the pole
    """
    pole = m.pole
    if pole is not None and abs(abs(pole - circle.center) - circle.r) <= 1e-12 * max(1.0, circle.r):
        raise PreconditionError("Circle passes through the pole; its image is a line")
    image = circumcircle(*(m.apply(z) for z in circle.sample(3)))
    inverted = pole is not None and abs(pole - circle.center) < circle.r
    return image, inverted


# ============================================================================
# Concentric normalization
# ============================================================================

def _limit_points(ca: Circle, cb: Circle) -> Tuple[complex, Optional[complex]]:
    """Common inverse points of the pencil: (point inside ca, point inside cb or None for infinity)."""
    d = abs(cb.center - ca.center)
    if d <= 1e-15 * max(ca.r, cb.r):
        return ca.center, None
    u = (cb.center - ca.center) / d
    s = (ca.r ** 2 - cb.r ** 2 + d ** 2) / d
    disc = s * s - 4.0 * ca.r ** 2
    if disc <= 0.0:
        raise PreconditionError("Circles intersect; no limit points")
    roots = [(s - math.sqrt(disc)) / 2.0, (s + math.sqrt(disc)) / 2.0]
    points = [ca.center + t * u for t in roots]
    points.sort(key=lambda z: abs(z - ca.center))
    return points[0], points[1]


def normalize_concentric(ca: Circle, cb: Circle) -> Tuple[MobiusMap, float]:
    """
    Mobius map sending ca to |z| = R and cb to |z| = R+1.

    The disk of ca goes to the inner disk and the disk of cb to the outside
    of the outer circle.

    Raises:
        PreconditionError: the closed disks meet (inversive distance <= 1)
        CertificateError: sampled images miss the target circles
    """
    delta = inversive_distance(ca, cb)
    if delta <= 1.0:
        raise PreconditionError(f"Circles are not disjoint (inversive distance {delta:.12g})")

    rho = math.exp(math.acosh(delta))
    R = 1.0 / (rho - 1.0)

    p, q = _limit_points(ca, cb)
    if q is None:
        m = MobiusMap(1, -p, 0, 1) if ca.r < cb.r else MobiusMap(0, 1, 1, -p)
    else:
        m = MobiusMap(1, -p, 1, -q)
        if abs(m.apply(ca.center + ca.r)) > abs(m.apply(cb.center + cb.r)):
            m = MobiusMap(1, -q, 1, -p)

    inner = abs(m.apply(ca.center + ca.r))
    m = MobiusMap(R / inner, 0, 0, 1).compose(m)

    tol = TOLERANCES.concentric
    for circle, target in ((ca, R), (cb, R + 1.0)):
        radii = np.abs(m.apply_many(circle.sample(16)))
        error = float(np.max(np.abs(radii - target)))
        if error > tol * max(1.0, target) * 10.0:
            raise CertificateError(f"Normalized circle misses |z| = {target:.9g} by {error:.3g}")
    logger.debug(f"Normalized pair: inversive distance {delta:.12g}, R = {R:.12g}")
    return m, R


# ============================================================================
# Circular rectangles
# ============================================================================

def circular_rectangle_ew(rect: CircularRectangle) -> float:
    """Extremal width of the family joining the two circular sides."""
    log_term = math.log1p(1.0 / rect.R)
    if rect.is_annulus:
        return TWO_PI / log_term
    return rect.circular_width / (rect.R * log_term)


def circular_width_error(rect: CircularRectangle) -> Tuple[float, float]:
    """(|EW - CW|, CW/R); the second bounds the first once R >= 1."""
    cw = TWO_PI * rect.R if rect.is_annulus else rect.circular_width
    return abs(circular_rectangle_ew(rect) - cw), cw / rect.R


def disk_rectangle_projection(disk: Circle, rect: CircularRectangle, samples: int = 400) -> Tuple[float, float]:
    """
    Radial projection length onto the inner side and area of disk within rect,
    both on a polar grid.
    """
    r = rect.R + (np.arange(samples) + 0.5) / samples
    t = rect.theta1 + (np.arange(samples) + 0.5) * rect.span / samples
    rr, tt = np.meshgrid(r, t, indexing="ij")
    z = rr * np.exp(1j * tt)
    inside = np.abs(z - disk.center) <= disk.r
    cell = (1.0 / samples) * (rect.span / samples)
    area = float(np.sum(rr[inside]) * cell)
    columns = np.any(inside, axis=0)
    length = float(rect.R * np.count_nonzero(columns) * rect.span / samples)
    return length, area


# ============================================================================
# Admissible disks
# ============================================================================

def _intersection_angle(cos_omega: float) -> Optional[float]:
    if cos_omega > 1.0 + 1e-12:
        return None
    return math.acos(max(-1.0, min(1.0, cos_omega)))


def _angle_allowed(omega: Optional[float], code: Optional[int], tol: float) -> bool:
    if omega is None:
        return True
    if code is not None:
        return abs(omega - angle_radians(code)) <= tol
    if omega <= tol:
        return True
    n = round(math.pi / omega)
    return n >= 2 and abs(omega - math.pi / n) <= tol


def is_admissible_disk(
    disk: Circle,
    R: float,
    code_inner: Optional[int] = None,
    code_outer: Optional[int] = None,
    tol: float = 1e-9,
) -> DiskAdmissibility:
    """
    Check a disk against the annulus R < |z| < R+1.

    The disk must meet the annulus; where it meets the inner disk or the
    outside of the outer circle, the angle must be pi/n or 0 (the given code
    when one is passed); meeting both needs the two angles to sum below pi.
    """
    d = abs(disk.center)
    r = disk.r
    outer = R + 1.0
    meets = max(0.0, d - r) < outer and d + r > R

    omega_inner = _intersection_angle((d * d - r * r - R * R) / (2.0 * r * R))
    omega_outer = _intersection_angle((r * r + outer * outer - d * d) / (2.0 * r * outer))
    angles_ok = _angle_allowed(omega_inner, code_inner, tol) and _angle_allowed(omega_outer, code_outer, tol)
    sum_ok = omega_inner is None or omega_outer is None or omega_inner + omega_outer < math.pi - tol

    return DiskAdmissibility(
        meets_annulus=meets,
        omega_inner=omega_inner,
        omega_outer=omega_outer,
        angles_ok=angles_ok,
        angle_sum_ok=sum_ok,
        diameter=2.0 * r,
    )


# ============================================================================
# Skinning interstice
# ============================================================================

def covered_interval(image: Circle, inverted: bool, R: float, tol: float) -> List[Interval]:
    """Angles of |z| = R inside the (possibly inverted) image disk, as [start, end] with start in [0, 2pi)."""
    c = abs(image.center)
    phi = math.atan2(image.cy, image.cx) % TWO_PI
    if c <= 1e-15:
        inside = R <= image.r
        full = inside != inverted
        return [(0.0, TWO_PI)] if full else []

    kappa = (R * R + c * c - image.r ** 2) / (2.0 * R * c)
    if not inverted:
        if kappa > 1.0 + tol:
            return []
        if kappa <= -1.0:
            return [(0.0, TWO_PI)]
        alpha = math.acos(min(1.0, kappa))
        return [((phi - alpha) % TWO_PI, (phi - alpha) % TWO_PI + 2.0 * alpha)]
    if kappa >= 1.0:
        return [(0.0, TWO_PI)]
    if kappa < -1.0 - tol:
        return []
    alpha = math.acos(max(-1.0, kappa))
    start = (phi + alpha) % TWO_PI
    return [(start, start + TWO_PI - 2.0 * alpha)]


def uncovered_arcs(intervals: Sequence[Interval], tol: float) -> List[Interval]:
    """Complement of a union of closed arcs on the circle."""
    pieces: List[Interval] = []
    for start, end in intervals:
        if end - start >= TWO_PI - tol:
            return []
        if end > TWO_PI:
            pieces += [(start, TWO_PI), (0.0, end - TWO_PI)]
        else:
            pieces.append((start, end))
    if not pieces:
        return [(0.0, TWO_PI)]

    pieces.sort()
    merged = [list(pieces[0])]
    for start, end in pieces[1:]:
        if start <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])

    gaps: List[Interval] = []
    for (_, e0), (s1, _) in zip(merged, merged[1:]):
        gaps.append((e0, s1))
    wrap = (merged[-1][1], merged[0][0] + TWO_PI)
    if wrap[1] - wrap[0] > tol:
        gaps.append(wrap)
    return [g for g in gaps if g[1] - g[0] > tol]


def skinning_width(
    pattern: DiskPattern,
    a: VertexId,
    b: VertexId,
    sg: Optional[SubdivisionGraph] = None,
) -> SkinningEstimate:
    """
    Circular width of the skinning interstice for the pair (a, b).

    After normalizing D_a and D_b to the outside of an annulus, the arcs of
    |z| = R covered by the other boundary disks are removed; the interstice
    side is the uncovered arc met when sweeping counterclockwise from the
    disk after a to the disk before a on the boundary cycle.

    Raises:
        PreconditionError: bad pair or D_a, D_b not disjoint
    """
    sg = sg if sg is not None else pattern.source
    if sg is None:
        raise PreconditionError("Pattern has no source graph")
    check_boundary_pair(sg, a, b)
    tol = get_settings().arc_tol

    m, R = normalize_concentric(pattern[a], pattern[b])
    coverage: Dict[VertexId, List[Interval]] = {}
    images: Dict[VertexId, Circle] = {}
    for v in sg.boundary:
        if v in (a, b):
            continue
        image, inverted = circle_image(m, pattern[v])
        images[v] = image
        coverage[v] = covered_interval(image, inverted, R, tol)

    n = len(sg.boundary)
    i = sg.boundary_index(a)
    after, before = sg.boundary[(i + 1) % n], sg.boundary[(i - 1) % n]
    theta_after = math.atan2(images[after].cy, images[after].cx) % TWO_PI
    theta_before = math.atan2(images[before].cy, images[before].cx) % TWO_PI
    sweep = (theta_before - theta_after) % TWO_PI

    arcs = uncovered_arcs([iv for ivs in coverage.values() for iv in ivs], tol)
    inside = [arc for arc in arcs if ((arc[0] + arc[1]) / 2.0 - theta_after) % TWO_PI < sweep]
    best = max(inside, key=lambda arc: arc[1] - arc[0], default=None)
    width = 0.0 if best is None else R * (best[1] - best[0])

    estimate = SkinningEstimate(
        width=width,
        R=R,
        chain_length=n,
        arcs=arcs,
        coverage=coverage,
        sweep=(theta_after, theta_after + sweep),
    )
    logger.info(f"Skinning width ({a}, {b}): W = {width:.9g} at R = {R:.9g}")
    return estimate


def width_trend(samples: Sequence[Tuple[DiskPattern, VertexId, VertexId]]) -> Dict[str, Any]:
    """
    Circular widths of several layouts next to the discrete widths of their
    graphs.

    The trend holds when, ordered by circular width, 1/EW of the separating
    family never drops by more than 1e-6.
    """
    rows: List[Dict[str, Any]] = []
    for pattern, a, b in samples:
        sg = pattern.source
        estimate = skinning_width(pattern, a, b)
        connecting = extremal_width(sg, FamilySpec.connecting(a, b))
        separating = extremal_width(sg, FamilySpec.separating(a, b))
        rows.append({
            "pair": [a, b],
            "boundary_radii": dict(sorted(pattern.boundary_radii.items())),
            "circular_width": estimate.width,
            "R": estimate.R,
            "ew_connecting": connecting.width,
            "ew_separating": separating.width,
            "el_separating": separating.length,
        })

    ordered = sorted(rows, key=lambda row: row["circular_width"])
    consistent = all(
        later["el_separating"] >= earlier["el_separating"] - TOLERANCES.duality
        for earlier, later in zip(ordered, ordered[1:])
    )
    return {"samples": rows, "consistent": consistent}
