"""Test worked examples and the seeded random generators."""
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.core.generators import (
    example_a,
    example_b,
    flower,
    merge_faces,
    pentagon_face_subdivision,
    random_nonadjacent_pair,
    random_subdivision,
    random_triangulated_subdivision,
)
from src.core.subdivision import connecting_families_nonempty, nonadjacent_boundary_pairs
from src.core.types import PreconditionError

seeds = st.integers(min_value=0, max_value=2**32 - 1)
few = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])


def euler_holds(sg):
    g = sg.graph
    return g.num_vertices - g.num_edges + len(sg.interior_faces) + 1 == 2


# ============================================================================
# Worked examples
# ============================================================================

def test_example_a_shape():
    sg = example_a()
    assert sg.boundary == ("A", "B", "C", "D")
    assert sorted(sg.interior_vertices) == ["a", "b", "c"]
    assert sg.is_triangulated
    assert euler_holds(sg)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_example_b_shape(n):
    sg = example_b(n)
    assert len(sg.interior_vertices) == 2 * n + 1
    assert sg.complexity == n + 3
    assert sum(1 for f in sg.interior_faces if f.side_count == n + 3) == 2
    assert euler_holds(sg)


def test_example_b_needs_positive_n():
    with pytest.raises(PreconditionError):
        example_b(0)


def test_pentagon_cell():
    sg = pentagon_face_subdivision()
    assert sg.complexity == 5
    assert sorted(f.side_count for f in sg.interior_faces).count(5) == 1


def test_flower_needs_three_petals():
    assert flower(3).graph.degree("x") == 3
    with pytest.raises(PreconditionError):
        flower(2)


def test_merge_faces_joins_two_triangles():
    sg = example_a()
    merged = merge_faces(sg, "b", "c")
    assert len(merged.interior_faces) == len(sg.interior_faces) - 1
    assert merged.complexity == 4
    assert not merged.graph.has_edge("b", "c")


def test_merge_faces_keeps_boundary():
    with pytest.raises(PreconditionError, match="boundary edge"):
        merge_faces(example_a(), "A", "B")


# ============================================================================
# Random subdivisions
# ============================================================================

@few
@given(seed=seeds)
def test_random_triangulation_is_valid(seed):
    sg = random_triangulated_subdivision(np.random.default_rng(seed), max_vertices=16)
    assert sg.is_triangulated
    assert 4 <= len(sg.boundary) <= 8
    assert sg.graph.num_vertices <= 16
    assert sg.interior_vertices
    assert sg.boundary[0] == min(sg.boundary)
    assert euler_holds(sg)
    # no chord between boundary vertices
    for u, v in nonadjacent_boundary_pairs(sg):
        assert not sg.graph.has_edge(u, v)


@few
@given(seed=seeds)
def test_random_triangulation_is_reproducible(seed):
    first = random_triangulated_subdivision(np.random.default_rng(seed), max_vertices=12)
    second = random_triangulated_subdivision(np.random.default_rng(seed), max_vertices=12)
    assert first.to_dict() == second.to_dict()


@few
@given(seed=seeds)
def test_random_subdivision_merges_cells(seed):
    base = random_triangulated_subdivision(np.random.default_rng(seed), max_vertices=16)
    sg = random_subdivision(np.random.default_rng(seed), max_vertices=16, max_complexity=8)
    assert set(sg.vertices) == set(base.vertices)
    assert set(sg.graph.edges) <= set(base.graph.edges)
    assert sg.boundary == base.boundary
    assert 3 <= sg.complexity <= 8
    assert euler_holds(sg)
    assert connecting_families_nonempty(sg)


@few
@given(seed=seeds)
def test_random_nonadjacent_pair(seed):
    rng = np.random.default_rng(seed)
    sg = random_triangulated_subdivision(rng, max_vertices=10)
    a, b = random_nonadjacent_pair(rng, sg)
    assert (a, b) in nonadjacent_boundary_pairs(sg)


def test_random_triangulation_needs_room(rng):
    with pytest.raises(PreconditionError):
        random_triangulated_subdivision(rng, max_vertices=4)
