"""
Numerical Tolerances
Thresholds shared by the solvers, the certificates and the geometry checks.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Default numerical tolerances."""
    # Shortest proper path must reach 1 - admissibility to count as admissible
    admissibility: float = 1e-9
    # Slack for the per-stage weight bound and the area certificate
    certificate: float = 1e-12
    # Triangulation duality |EW * EW* - 1|
    duality: float = 1e-6
    # Quasi-duality lower end
    quasi_duality_low: float = 1e-9
    # Angle-sum target for the radius iteration
    layout: float = 1e-10
    # Edge relation / residual acceptance for converged layouts
    layout_residual: float = 1e-8
    # Angular merging of covered arcs
    arc: float = 1e-10
    # Concentric normalization check (relative)
    concentric: float = 1e-9
    # Exact-solver agreement
    bruteforce: float = 1e-10


@dataclass(frozen=True)
class Limits:
    """Iteration caps and size limits."""
    max_cuts: int = 10_000
    layout_max_iter: int = 100_000
    bruteforce_max_free: int = 14
    k_connectivity_max_vertices: int = 400


TOLERANCES = Tolerances()
LIMITS = Limits()
