"""Test subdivision construction, boundary pairs and the hub triangulation."""
import pytest

from src.core.generators import (
    SQUARE,
    SQUARE_CYCLE,
    cycle_edges,
    example_b,
    pentagon_face_subdivision,
    quad_with_hub,
    right_angled_wheel,
    subdivision_from_positions,
)
from src.core.graph_core import build_plane_graph, find_face, serialize_plane_graph
from src.core.subdivision import (
    check_boundary_pair,
    connecting_families_nonempty,
    is_acylindrical_subdivision,
    is_lamination,
    make_subdivision,
    nonadjacent_boundary_pairs,
    pairs_unlinked,
    subdivision_from_document,
    subdivision_from_face,
    triangulate,
)
from src.core.types import PreconditionError

HEXAGON = ("1", "2", "3", "4", "5", "6")


def square_with_diagonal(u="A", v="C"):
    return subdivision_from_positions(SQUARE, cycle_edges(SQUARE_CYCLE) + [(u, v)], SQUARE_CYCLE)


# ============================================================================
# Construction
# ============================================================================

def test_quad_with_hub(hub):
    assert hub.boundary == ("A", "B", "C", "D")
    assert hub.interior_vertices == ("x",)
    assert len(hub.interior_faces) == 4
    assert hub.complexity == 3
    assert hub.is_triangulated


def test_boundary_orientation_is_normalized():
    g = quad_with_hub().graph
    sg = make_subdivision(g, ["C", "B", "A", "D"])
    assert sg.boundary == ("A", "B", "C", "D")


def test_square_with_diagonal():
    sg = square_with_diagonal()
    assert len(sg.interior_faces) == 2
    assert sg.complexity == 3


def test_lone_triangle_is_rejected(triangle):
    with pytest.raises(PreconditionError, match="2 interior cells"):
        make_subdivision(triangle, ["A", "B", "C"])


def test_outer_must_be_a_face(hub):
    with pytest.raises(PreconditionError, match="not a face"):
        make_subdivision(hub.graph, ["A", "C", "x"])
    with pytest.raises(PreconditionError):
        make_subdivision(hub.graph, ["A", "B"])


def test_subdivision_from_document(hub):
    doc = serialize_plane_graph(hub.graph)
    doc["outer_face"] = ["A", "D", "C", "B"]
    sg = subdivision_from_document(doc)
    assert sg.boundary == hub.boundary
    del doc["outer_face"]
    with pytest.raises(PreconditionError, match="outer_face"):
        subdivision_from_document(doc)


def test_subdivision_from_hyperbolic_face():
    wheel = right_angled_wheel(spoke_v1_code=3)
    rim = find_face(wheel.graph, ["v1", "v2", "v3", "v4"])
    sg = subdivision_from_face(wheel, rim)
    assert set(sg.boundary) == {"v1", "v2", "v3", "v4"}
    assert sg.interior_vertices == ("x",)
    assert sg.weight("x", "v3") == 2


def test_subdivision_from_elliptic_face_is_rejected():
    wheel = right_angled_wheel()
    # angles pi/2 + pi/3 + pi/3 exceed pi
    face = find_face(wheel.graph, ["x", "v1", "v2"])
    with pytest.raises(PreconditionError, match="elliptic"):
        subdivision_from_face(wheel, face)


# ============================================================================
# Boundary pairs and predicates
# ============================================================================

def test_boundary_arcs(hub):
    assert hub.boundary_arcs("A", "C") == (("B",), ("D",))
    assert hub.boundary_arcs("C", "A") == (("D",), ("B",))


def test_check_boundary_pair(hub):
    check_boundary_pair(hub, "A", "C")
    with pytest.raises(PreconditionError, match="adjacent"):
        check_boundary_pair(hub, "A", "B")
    with pytest.raises(PreconditionError, match="not a boundary vertex"):
        check_boundary_pair(hub, "A", "x")
    with pytest.raises(PreconditionError, match="coincide"):
        check_boundary_pair(hub, "A", "A")


def test_nonadjacent_pairs(hub):
    assert nonadjacent_boundary_pairs(hub) == [("A", "C"), ("B", "D")]


def test_connecting_families(hub):
    assert connecting_families_nonempty(hub).ok
    sg = square_with_diagonal("B", "D")
    verdict = connecting_families_nonempty(sg)
    assert not verdict.ok
    assert verdict.witness == ["A", "C"]


def test_acylindrical_with_flat_hub():
    assert is_acylindrical_subdivision(quad_with_hub()).ok


def test_right_angles_at_common_neighbor_break_acylindricity():
    verdict = is_acylindrical_subdivision(quad_with_hub(hub_code=2))
    assert not verdict.ok
    assert verdict.witness == ["A", "x", "C"]


def test_acylindrical_subdivision_from_wheel():
    wheel = right_angled_wheel(spoke_v1_code=3)
    sg = subdivision_from_face(wheel, find_face(wheel.graph, ["v1", "v2", "v3", "v4"]))
    assert is_acylindrical_subdivision(sg).ok


@pytest.mark.parametrize("p, q, expected", [
    (("1", "4"), ("2", "3"), True),
    (("1", "4"), ("3", "6"), False),
    (("1", "4"), ("1", "4"), True),
    (("2", "5"), ("6", "1"), True),
    (("2", "5"), ("4", "6"), False),
])
def test_pairs_unlinked(p, q, expected):
    assert pairs_unlinked(p, q, HEXAGON) is expected


def test_pairs_unlinked_rejects_foreign_vertex():
    with pytest.raises(PreconditionError):
        pairs_unlinked(("1", "4"), ("2", "9"), HEXAGON)


def test_is_lamination():
    assert is_lamination([("1", "3"), ("3", "5"), ("1", "5")], HEXAGON).ok
    verdict = is_lamination([("1", "4"), ("2", "3"), ("3", "6")], HEXAGON)
    assert not verdict.ok
    assert verdict.witness == [["1", "4"], ["3", "6"]]


# ============================================================================
# Triangulation
# ============================================================================

def test_triangulation_of_triangulated_graph_is_identity(hub):
    ext = triangulate(hub)
    assert ext.graph is hub
    assert ext.hubs == ()
    assert ext.quotient == {v: v for v in hub.vertices}


def test_pentagon_gets_one_hub():
    sg = pentagon_face_subdivision()
    assert sg.complexity == 5
    ext = triangulate(sg)
    assert ext.hubs == ("w0",)
    assert ext.graph.graph.degree("w0") == 5
    assert ext.graph.is_triangulated
    assert ext.graph.boundary == sg.boundary


def test_example_b_gets_two_hubs():
    sg = example_b(1)
    assert sg.complexity == 4
    ext = triangulate(sg)
    assert len(ext.hubs) == 2
    assert ext.graph.is_triangulated
    assert ext.graph.graph.num_vertices == sg.graph.num_vertices + 2


def test_hub_edges_are_weighted_zero():
    sg = example_b(2)
    ext = triangulate(sg)
    for hub in ext.hubs:
        for v in ext.graph.graph.neighbors(hub):
            assert ext.graph.weight(hub, v) == 0
