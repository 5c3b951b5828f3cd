"""Test Coxeter graph classification, realizability and connection predicates."""
from fractions import Fraction

import pytest

from src.core.coxeter import (
    check_realizable,
    classify_faces,
    completion,
    coxeter_from_document,
    elliptic_connections,
    hat_graph,
    is_acylindrical,
    is_prism_graph,
    limit_set_connected,
    make_coxeter_graph,
    normalization_diagnostics,
    right_angled_2_connections,
    tetrahedron_criterion,
    topological_complexity,
)
from src.core.generators import (
    coxeter_from_positions,
    elliptic_connection_graph,
    right_angled_tetrahedron,
    right_angled_wheel,
)
from src.core.graph_core import build_plane_graph, serialize_plane_graph
from src.core.types import GraphFormatError, PreconditionError
from src.models.coxeter_models import FaceType, RealizabilityStatus

SQUARE = {"A": (0.0, 0.0), "B": (1.0, 0.0), "C": (1.0, 1.0), "D": (0.0, 1.0)}


def weighted_triangle(codes):
    g = build_plane_graph(["A", "B", "C"], {"A": ["B", "C"], "B": ["C", "A"], "C": ["A", "B"]})
    return make_coxeter_graph(g, dict(zip([("A", "B"), ("B", "C"), ("A", "C")], codes)))


def right_angled_square():
    return coxeter_from_positions(SQUARE, {("A", "B"): 2, ("B", "C"): 2, ("C", "D"): 2, ("D", "A"): 2})


def bipyramid(equator_code, pole_code):
    positions = {"v1": (0.0, 0.0), "v2": (10.0, 0.0), "b": (5.0, 10.0), "v3": (5.0, 3.0), "a": (5.0, 1.5)}
    weights = {("v1", "v2"): equator_code, ("v2", "v3"): equator_code, ("v3", "v1"): equator_code}
    weights.update({(p, v): pole_code for p in ("a", "b") for v in ("v1", "v2", "v3")})
    return coxeter_from_positions(positions, weights)


# ============================================================================
# Classification
# ============================================================================

def test_triangle_below_pi_is_hyperbolic():
    classes = classify_faces(weighted_triangle([2, 3, 7]))
    assert len(classes) == 2
    for cls in classes.values():
        assert cls.kind == FaceType.HYPERBOLIC
        assert cls.weight_sum == Fraction(41, 42)


def test_triangle_at_pi_is_parabolic():
    classes = classify_faces(weighted_triangle([2, 4, 4]))
    assert all(c.kind == FaceType.PARABOLIC for c in classes.values())


def test_triangle_above_pi_is_elliptic():
    classes = classify_faces(weighted_triangle([2, 2, 3]))
    assert all(c.kind == FaceType.ELLIPTIC for c in classes.values())


def test_right_angled_quadrilateral_is_parabolic():
    classes = classify_faces(right_angled_square())
    assert [c.kind for c in classes.values()] == [FaceType.PARABOLIC, FaceType.PARABOLIC]
    assert all(c.weight_sum == 2 for c in classes.values())


def test_weights_must_cover_every_edge():
    g = build_plane_graph(["A", "B", "C"], {"A": ["B", "C"], "B": ["C", "A"], "C": ["A", "B"]})
    with pytest.raises(GraphFormatError):
        make_coxeter_graph(g, {("A", "B"): 2})
    with pytest.raises(GraphFormatError):
        coxeter_from_document(serialize_plane_graph(g))


# ============================================================================
# Completion and normalization
# ============================================================================

def test_completion_without_parabolic_quadrilateral_is_trivial():
    done = completion(right_angled_tetrahedron())
    assert done.extra_edges == ()
    assert done.extraneous_faces == ()


def test_completion_of_right_angled_square_uses_one_face():
    done = completion(right_angled_square())
    assert set(done.extra_edges) == {("A", "C"), ("B", "D")}
    assert len(done.extraneous_faces) == 4
    assert done.weight("A", "C") == 0
    assert completion(done) is done


def test_normalization_flags_split_quadrilateral():
    cg = coxeter_from_positions(
        SQUARE,
        {("A", "B"): 2, ("B", "C"): 2, ("C", "D"): 2, ("D", "A"): 2, ("A", "C"): 0},
    )
    issues = normalization_diagnostics(cg)
    assert len(issues) == 1
    assert issues[0].shared_edge == ("A", "C")
    assert set(issues[0].merged_quadrilateral) == {"A", "B", "C", "D"}


# ============================================================================
# Realizability
# ============================================================================

def test_right_angled_tetrahedron_is_undecided_but_consistent():
    report = check_realizable(right_angled_tetrahedron())
    assert report.status == RealizabilityStatus.UNDECIDED
    assert report.conditions_hold is True
    assert report.violations == []


def test_separating_triangle_violates_condition_a():
    positions = {"a": (0.0, 0.0), "b": (4.0, 0.0), "c": (2.0, 4.0), "d": (2.0, 1.5), "e": (2.0, 0.5)}
    weights = {
        ("a", "b"): 2, ("b", "d"): 2, ("d", "a"): 2,
        ("b", "c"): 0, ("c", "a"): 0, ("d", "c"): 0,
        ("e", "a"): 0, ("e", "b"): 0, ("e", "d"): 0,
    }
    report = check_realizable(coxeter_from_positions(positions, weights))
    assert report.status == RealizabilityStatus.NOT_REALIZABLE
    assert report.route == "kat"
    assert report.witness.condition == "A"
    assert report.witness.cycle == ("a", "b", "d")
    assert report.witness.weight_sum == Fraction(3, 2)


def test_prism_detected():
    labels = is_prism_graph(bipyramid(3, 2))
    assert labels is not None
    assert (labels.a, labels.b) == ("a", "b")
    assert labels.equator == ("v1", "v2", "v3")


def test_prism_equator_at_pi_fails_condition_one():
    report = check_realizable(bipyramid(3, 2))
    assert report.route == "prism"
    assert report.status == RealizabilityStatus.NOT_REALIZABLE
    assert "I" in {v.condition for v in report.violations}


def test_report_serializes_exact_sums():
    data = check_realizable(bipyramid(3, 2)).to_dict()
    first = data["violations"][0]
    assert first["condition"] == "I"
    assert first["weight_sum"] == {"num": 1, "den": 1}


# ============================================================================
# Connections and predicates
# ============================================================================

def test_elliptic_connection_found():
    connections = elliptic_connections(elliptic_connection_graph(3))
    assert [edge for edge, _ in connections] == [("v1", "v3")]


def test_zero_chord_is_not_a_connection():
    assert elliptic_connections(elliptic_connection_graph(0)) == []


def test_limit_set_connected():
    assert limit_set_connected(elliptic_connection_graph(0)).ok
    verdict = limit_set_connected(elliptic_connection_graph(3))
    assert not verdict.ok
    assert verdict.witness["edge"] == ["v1", "v3"]


def test_limit_set_of_path_graph():
    g = build_plane_graph(["A", "B", "C"], {"A": ["B"], "B": ["A", "C"], "C": ["B"]})
    verdict = limit_set_connected(make_coxeter_graph(g, {("A", "B"): 2, ("B", "C"): 2}))
    assert not verdict.ok
    assert verdict.witness == ["B"]


def test_right_angled_2_connection():
    assert right_angled_2_connections(right_angled_wheel()) == [("v1", "x", "v3")]
    assert right_angled_2_connections(right_angled_wheel(spoke_v1_code=3)) == []


def test_right_angled_2_connection_across_an_outside_edge():
    # v1-v3 is an edge of G drawn outside the arrowhead face v1 v2 v3 v4
    positions = {"v1": (-2.0, 0.0), "v2": (0.0, 3.0), "v3": (2.0, 0.0), "v4": (0.0, 2.0), "x": (0.0, -1.0)}
    weights = {
        ("v1", "v2"): 3, ("v2", "v3"): 3, ("v3", "v4"): 3, ("v4", "v1"): 3,
        ("v1", "v3"): 3, ("x", "v1"): 2, ("x", "v3"): 2,
    }
    assert right_angled_2_connections(coxeter_from_positions(positions, weights)) == [("v1", "x", "v3")]


def test_wheel_with_right_angled_connection_is_not_acylindrical():
    verdict = is_acylindrical(right_angled_wheel())
    assert not verdict.ok
    assert verdict.witness == ["v1", "x", "v3"]
    assert is_acylindrical(right_angled_wheel(spoke_v1_code=3)).ok


def test_graph_without_hyperbolic_face_is_acylindrical():
    assert is_acylindrical(right_angled_tetrahedron()).ok


def test_acylindricity_needs_four_vertices():
    with pytest.raises(PreconditionError):
        is_acylindrical(weighted_triangle([2, 3, 7]))


@pytest.mark.parametrize("codes, expected", [
    ([2, 3, 7], True),
    ([2, 3, 6], False),
    ([2, 4, 4], False),
    ([0, 0, 2], True),
    ([3, 3, 3], False),
])
def test_tetrahedron_criterion(codes, expected):
    assert tetrahedron_criterion(codes) is expected


def test_hat_graph_removes_hyperbolic_faces():
    wheel = right_angled_wheel()
    hat = hat_graph(wheel)
    assert hat.graph.num_vertices == wheel.graph.num_vertices + 1
    new = [v for v in hat.vertices if v not in wheel.vertices]
    assert len(new) == 1
    assert hat.graph.degree(new[0]) == 4
    assert all(hat.weight(new[0], v) == 2 for v in hat.graph.neighbors(new[0]))
    assert all(c.kind != FaceType.HYPERBOLIC for c in classify_faces(hat).values())


def test_hat_graph_realizability_tracks_acylindricity():
    good = right_angled_wheel(spoke_v1_code=3)
    assert is_acylindrical(good).ok
    assert check_realizable(hat_graph(good)).status == RealizabilityStatus.REALIZABLE

    bad = right_angled_wheel()
    assert not is_acylindrical(bad).ok
    report = check_realizable(hat_graph(bad))
    assert report.status == RealizabilityStatus.NOT_REALIZABLE
    assert report.witness.condition == "B"
    assert tuple(report.witness.cycle) == ("hat0", "v1", "x", "v3")


def test_hat_graph_without_hyperbolic_face_is_unchanged():
    cg = right_angled_tetrahedron()
    assert hat_graph(cg) is cg


def test_topological_complexity():
    assert topological_complexity(right_angled_wheel()) == 4
    assert topological_complexity(elliptic_connection_graph(4)) == 5
    with pytest.raises(PreconditionError):
        topological_complexity(right_angled_tetrahedron())
