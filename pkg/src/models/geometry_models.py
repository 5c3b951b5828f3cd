"""
Geometry Data Models
Circles, circular rectangles, Mobius maps and disk patterns.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.core.types import PreconditionError, VertexId
from src.models.subdivision_models import SubdivisionGraph


@dataclass(frozen=True)
class Circle:
    """Round circle (or the closed disk it bounds)."""
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy) and math.isfinite(self.r)):
            raise PreconditionError(f"Circle has non-finite data: {self}")
        if self.r <= 0.0:
            raise PreconditionError(f"Circle radius must be positive, got {self.r}")

    @property
    def center(self) -> complex:
        return complex(self.cx, self.cy)

    @classmethod
    def from_center(cls, center: complex, r: float) -> 'Circle':
        return cls(float(center.real), float(center.imag), float(r))

    def sample(self, count: int) -> np.ndarray:
        """Evenly spaced points on the circle as complex numbers."""
        t = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        return self.center + self.r * np.exp(1j * t)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) < self.r - tol

    def to_dict(self) -> Dict[str, float]:
        return {"cx": self.cx, "cy": self.cy, "r": self.r}


@dataclass(frozen=True)
class CircularRectangle:
    """{r e^{i t}: R < r < R+1, theta1 < t < theta2}."""
    R: float
    theta1: float
    theta2: float

    def __post_init__(self):
        if self.R <= 0.0:
            raise PreconditionError("Circular rectangle needs R > 0")
        span = self.theta2 - self.theta1
        if not (0.0 < span <= 2.0 * math.pi + 1e-12):
            raise PreconditionError(f"Angle span must lie in (0, 2pi], got {span}")

    @classmethod
    def annulus(cls, R: float) -> 'CircularRectangle':
        return cls(R, 0.0, 2.0 * math.pi)

    @property
    def span(self) -> float:
        return self.theta2 - self.theta1

    @property
    def is_annulus(self) -> bool:
        return self.span >= 2.0 * math.pi - 1e-12

    @property
    def circular_width(self) -> float:
        """Length of the inner horizontal side."""
        return self.R * min(self.span, 2.0 * math.pi)


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with ad - bc != 0."""
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.determinant) < 1e-300:
            raise PreconditionError("Mobius map is degenerate (ad - bc = 0)")

    @classmethod
    def identity(cls) -> 'MobiusMap':
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def pole(self) -> Optional[complex]:
        """Preimage of infinity (None when infinity is fixed)."""
        if self.c == 0:
            return None
        return -self.d / self.c

    def apply(self, z: complex) -> complex:
        """Image of a finite point; the pole maps to complex infinity."""
        den = self.c * z + self.d
        if den == 0:
            return complex(math.inf, math.inf)
        return (self.a * z + self.b) / den

    def apply_many(self, z: np.ndarray) -> np.ndarray:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def compose(self, other: 'MobiusMap') -> 'MobiusMap':
        """self after other."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> 'MobiusMap':
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def to_dict(self) -> Dict[str, List[float]]:
        return {k: [complex(v).real, complex(v).imag] for k, v in
                (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d))}


@dataclass
class DiskPattern:
    """One closed disk per vertex of a weighted subdivision graph."""
    disks: Dict[VertexId, Circle]
    source: Optional[SubdivisionGraph] = None
    normalization: str = "boundary radii fixed"
    boundary_radii: Dict[VertexId, float] = field(default_factory=dict)

    def __getitem__(self, v: VertexId) -> Circle:
        return self.disks[v]

    def centers(self) -> Dict[VertexId, Tuple[float, float]]:
        return {v: (c.cx, c.cy) for v, c in self.disks.items()}

    def radii(self) -> Dict[VertexId, float]:
        return {v: c.r for v, c in self.disks.items()}

    def to_document(self) -> Dict[str, Dict[str, float]]:
        """{vertex: {cx, cy, r}} form."""
        return {v: self.disks[v].to_dict() for v in sorted(self.disks)}

    def to_dict(self) -> Dict[str, Any]:
        return {"disks": self.to_document(), "normalization": self.normalization}


@dataclass
class DiskAdmissibility:
    """Diagnostics of a disk against the annulus R < |z| < R+1."""
    meets_annulus: bool
    omega_inner: Optional[float]      # None when disjoint from the inner disk
    omega_outer: Optional[float]      # None when disjoint from the outer complementary disk
    angles_ok: bool
    angle_sum_ok: bool
    diameter: float

    @property
    def diameter_ok(self) -> bool:
        return self.diameter <= 5.0

    @property
    def admissible(self) -> bool:
        return self.meets_annulus and self.angles_ok and self.angle_sum_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "admissible": self.admissible,
            "meets_annulus": self.meets_annulus,
            "omega_inner": self.omega_inner,
            "omega_outer": self.omega_outer,
            "angles_ok": self.angles_ok,
            "angle_sum_ok": self.angle_sum_ok,
            "diameter": self.diameter,
            "diameter_ok": self.diameter_ok,
        }


@dataclass
class SkinningEstimate:
    """Circular width of the skinning interstice after concentric normalization."""
    width: float
    R: float
    chain_length: int
    arcs: List[Tuple[float, float]] = field(default_factory=list)
    coverage: Dict[VertexId, List[Tuple[float, float]]] = field(default_factory=dict)
    sweep: Tuple[float, float] = (0.0, 0.0)

    @property
    def interval(self) -> Tuple[float, float]:
        slack = 25.0 * self.chain_length
        return self.width - slack, self.width + slack

    def to_dict(self) -> Dict[str, Any]:
        low, high = self.interval
        return {
            "width": self.width,
            "R": self.R,
            "chain_length": self.chain_length,
            "interval": [low, high],
            "caveat": "interval proven only when the width is at least 25*max(N, R0); R0 is not explicit",
            "arcs": [list(a) for a in self.arcs],
            "coverage": {v: [list(i) for i in c] for v, c in sorted(self.coverage.items())},
            "sweep": list(self.sweep),
        }


@dataclass
class LayoutDiagnostics:
    """Residuals of a laid-out pattern against its weighted graph."""
    edge_residuals: Dict[str, float] = field(default_factory=dict)          # "u-v" -> relative residual
    angle_residuals: Dict[VertexId, float] = field(default_factory=dict)    # interior vertex -> |sum - 2pi|
    overlaps: List[Tuple[VertexId, VertexId]] = field(default_factory=list)
    sweeps: int = 0

    @property
    def max_edge_residual(self) -> float:
        return max(self.edge_residuals.values(), default=0.0)

    @property
    def max_angle_residual(self) -> float:
        return max(self.angle_residuals.values(), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_edge_residual": self.max_edge_residual,
            "max_angle_residual": self.max_angle_residual,
            "edge_residuals": dict(sorted(self.edge_residuals.items())),
            "angle_residuals": dict(sorted(self.angle_residuals.items())),
            "overlaps": [list(p) for p in self.overlaps],
            "sweeps": self.sweeps,
        }
