"""Seeded end-to-end checks over worked examples and random subdivisions."""
import math

import numpy as np
import pytest

from src.core.conformal_geom import circular_rectangle_ew, width_trend
from src.core.coxeter import is_acylindrical, limit_set_connected, tetrahedron_criterion
from src.core.extremal import (
    duality_report,
    extremal_width,
    extremal_width_bruteforce,
    minimal_constraints,
    solve_width,
    verify_projection_bound,
)
from src.core.generators import (
    elliptic_connection_graph,
    example_a,
    example_b,
    flower,
    random_nonadjacent_pair,
    random_subdivision,
    random_triangulated_subdivision,
    right_angled_wheel,
)
from src.core.layout import layout_residuals, solve_radii, thurston_layout
from src.core.types import OracleSizeError
from src.models.extremal_models import EWStatus, FamilySpec
from src.models.geometry_models import CircularRectangle


def test_example_a_reproduction():
    sg = example_a()
    assert extremal_width(sg, FamilySpec.connecting("A", "C")).width == pytest.approx(2 / 3, abs=1e-6)
    assert extremal_width(sg, FamilySpec.connecting("B", "D")).width == pytest.approx(3 / 2, abs=1e-6)
    assert duality_report(sg, "A", "C").product == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("n", range(1, 7))
def test_example_b_reproduction(n):
    sg = example_b(n)
    assert extremal_width(sg, FamilySpec.connecting("A", "C")).width == pytest.approx(1.0, abs=1e-6)
    assert extremal_width(sg, FamilySpec.connecting("B", "D")).width == pytest.approx(1 / (2 * n + 1), abs=1e-6)
    report = duality_report(sg, "A", "C")
    assert 1 / (4 * (n + 3) + 1) ** 2 <= report.product <= 1.0 + 1e-6


@pytest.mark.parametrize("seed", range(200))
def test_triangulation_duality(seed):
    rng = np.random.default_rng(seed)
    sg = random_triangulated_subdivision(rng, max_vertices=30)
    a, b = random_nonadjacent_pair(rng, sg)
    report = duality_report(sg, a, b)
    assert report.triangulated
    assert report.product == pytest.approx(1.0, abs=1e-6)
    assert report.holds


@pytest.mark.parametrize("seed", range(200))
def test_quasi_duality(seed):
    rng = np.random.default_rng(1000 + seed)
    sg = random_subdivision(rng, max_vertices=30, max_complexity=8)
    a, b = random_nonadjacent_pair(rng, sg)
    report = duality_report(sg, a, b)
    assert report.product is not None
    n = sg.complexity
    assert 1 / (4 * n + 1) ** 2 - 1e-9 <= report.product <= 1.0 + 1e-6
    assert report.holds


@pytest.mark.parametrize("seed", range(50))
def test_projection_sandwich(seed):
    rng = np.random.default_rng(2000 + seed)
    sg = random_subdivision(rng, max_vertices=30, max_complexity=8)
    report = verify_projection_bound(sg, *random_nonadjacent_pair(rng, sg))
    assert all(report.sandwich.values())
    for kind in ("connecting", "separating"):
        certificate = report.certificates[kind]
        assert certificate["holds"], certificate
        assert certificate["stage_checks"]
    assert report.holds


def oracle_cases(seed, max_vertices):
    rng = np.random.default_rng(seed)
    sg = random_triangulated_subdivision(rng, max_vertices=max_vertices)
    a, b = random_nonadjacent_pair(rng, sg)
    return sg, (FamilySpec.connecting(a, b), FamilySpec.separating(a, b))


@pytest.mark.parametrize("seed", range(20))
def test_solver_matches_oracle(seed):
    # 4 boundary vertices at least, so at most 14 free ones
    sg, specs = oracle_cases(3000 + seed, max_vertices=18)
    for spec in specs:
        result = solve_width(sg, spec, oracle=True)
        assert result.status == EWStatus.OPTIMAL


@pytest.mark.parametrize("seed", range(20))
def test_oracle_accepts_every_graph_within_the_cap(seed):
    sg, specs = oracle_cases(seed, max_vertices=22)
    if len(sg.interior_vertices) > 14:
        with pytest.raises(OracleSizeError):
            extremal_width_bruteforce(sg, specs[0])
        return
    for spec in specs:
        exact = extremal_width_bruteforce(sg, spec)
        assert exact.iterations == len(minimal_constraints(sg, spec, sg.boundary_set))
        assert exact.width == pytest.approx(extremal_width(sg, spec).width, abs=1e-6)


def test_predicate_fixtures():
    assert tetrahedron_criterion([2, 3, 7])
    assert not tetrahedron_criterion([2, 3, 6])
    assert not is_acylindrical(right_angled_wheel()).ok
    assert not limit_set_connected(elliptic_connection_graph(3)).ok
    assert limit_set_connected(elliptic_connection_graph(0)).ok


@pytest.mark.parametrize("R", [1.0, 10.0, 100.0, 1e4])
def test_annulus_width_near_circumference(R):
    width = circular_rectangle_ew(CircularRectangle.annulus(R))
    assert width == pytest.approx(2 * math.pi / math.log(1 + 1 / R))
    assert abs(width - 2 * math.pi * R) <= 2 * math.pi


@pytest.mark.parametrize("petals, center", [(6, 1.0), (4, math.sqrt(2.0) - 1.0)])
def test_flower_layouts(petals, center):
    sg = flower(petals)
    radii, _ = solve_radii(sg, {})
    assert radii["x"] == pytest.approx(center, abs=1e-8)
    assert layout_residuals(thurston_layout(sg)).max_edge_residual <= 1e-8


def test_width_trend_over_boundary_radii():
    sg = flower(6, weight_code=2)
    samples = [(thurston_layout(sg, {v: r for v in sg.boundary}), "p0", "p3") for r in (0.5, 1.0, 2.0)]
    trend = width_trend(samples)
    assert trend["consistent"]
    assert [row["boundary_radii"]["p0"] for row in trend["samples"]] == [0.5, 1.0, 2.0]
