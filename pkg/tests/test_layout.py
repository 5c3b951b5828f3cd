"""Test the radius iteration, placement, pattern documents and SVG output."""
import json
import math

import pytest

from src.core.generators import example_b, flower, quad_with_hub
from src.core.layout import (
    corner_angle,
    edge_length,
    layout_residuals,
    pattern_from_document,
    pattern_to_document,
    render_svg,
    solve_radii,
    thurston_layout,
)
from src.core.types import GraphFormatError, PreconditionError


@pytest.mark.parametrize("petals, center", [
    (3, 2.0 / math.sqrt(3.0) - 1.0),
    (4, math.sqrt(2.0) - 1.0),
    (6, 1.0),
])
def test_tangent_flower_center_radius(petals, center):
    radii, sweeps = solve_radii(flower(petals), {})
    assert radii["x"] == pytest.approx(center, rel=1e-9)
    assert sweeps == 1


def test_edge_length_and_corner_angle():
    assert edge_length(1.0, 2.0, 1.0) == pytest.approx(3.0)
    assert edge_length(3.0, 4.0, 0.0) == pytest.approx(5.0)
    assert corner_angle(3.0, 4.0, 5.0) == pytest.approx(math.pi / 2)


def test_layout_of_tangent_flower():
    pattern = thurston_layout(flower(6))
    assert pattern["x"].r == pytest.approx(1.0, rel=1e-9)
    for v in ("p0", "p1", "p2", "p3", "p4", "p5"):
        assert pattern[v].r == 1.0
        assert abs(pattern[v].center - pattern["x"].center) == pytest.approx(2.0, rel=1e-9)

    diagnostics = layout_residuals(pattern)
    assert diagnostics.max_edge_residual < 1e-8
    assert diagnostics.max_angle_residual < 1e-9
    assert diagnostics.overlaps == []


def test_layout_with_overlap_angles():
    pattern = thurston_layout(flower(5, weight_code=3))
    diagnostics = layout_residuals(pattern)
    assert diagnostics.max_edge_residual < 1e-8
    assert diagnostics.max_angle_residual < 1e-9


def test_scaling_boundary_radii_scales_the_pattern():
    sg = quad_with_hub()
    small = thurston_layout(sg)
    large = thurston_layout(sg, {v: 3.0 for v in sg.boundary})
    assert large["x"].r == pytest.approx(3.0 * small["x"].r, rel=1e-9)


def test_layout_needs_triangles():
    with pytest.raises(PreconditionError, match="triangulate"):
        thurston_layout(example_b(1))


@pytest.mark.parametrize("radii", [{"p0": -1.0}, {"p0": float("inf")}, {"x": 1.0}])
def test_layout_rejects_bad_radii(radii):
    with pytest.raises(PreconditionError):
        thurston_layout(flower(4), radii)


def test_residuals_flag_overlaps():
    pattern = thurston_layout(flower(6))
    pattern.disks["p3"] = pattern.disks["p0"]
    diagnostics = layout_residuals(pattern)
    assert ("p0", "p3") in diagnostics.overlaps
    assert diagnostics.max_edge_residual > 1e-3


# ============================================================================
# Documents and SVG
# ============================================================================

def test_pattern_document_round_trip():
    sg = flower(4)
    pattern = thurston_layout(sg)
    doc = json.dumps(pattern_to_document(pattern))
    again = pattern_from_document(doc, sg)
    assert again.radii() == pytest.approx(pattern.radii())
    assert again.boundary_radii == {v: 1.0 for v in sg.boundary}
    assert pattern_from_document({"disks": json.loads(doc)}).source is None


@pytest.mark.parametrize("doc, message", [
    ("{oops", "not valid JSON"),
    ([1, 2], "must be an object"),
    ({"x": {"cx": 0.0, "cy": 0.0}}, "Bad disk entry"),
    ({"x": {"cx": 0.0, "cy": 0.0, "r": -1.0}}, "Bad disk entry"),
])
def test_pattern_document_errors(doc, message):
    with pytest.raises(GraphFormatError, match=message):
        pattern_from_document(doc)


def test_pattern_document_must_cover_graph():
    with pytest.raises(GraphFormatError, match="no disk"):
        pattern_from_document({"x": {"cx": 0.0, "cy": 0.0, "r": 1.0}}, flower(4))


def test_render_svg():
    sg = flower(5)
    svg = render_svg(thurston_layout(sg), labels=True, shade_interstices=True)
    assert svg.startswith("<svg")
    assert svg.count("<circle") == 6
    assert svg.count("<text") == 6
    assert svg.count("<polygon") == len(sg.interior_faces)
    assert 'class="boundary"' in svg


def test_render_svg_plain():
    svg = render_svg(thurston_layout(flower(3)))
    assert "<text" not in svg
    assert "<polygon" not in svg
