"""Test the staged metric extension and its projection onto the hub triangulation."""
import numpy as np
import pytest

from src.core.generators import example_b, random_triangulated_subdivision
from src.core.metric_extension import (
    f_profile,
    fan_weights,
    init_metric_trace,
    extend_metric_step,
    j_sequence,
    project_metric,
    quotient_map,
    run_metric_pipeline,
    stage_order,
)
from src.core.subdivision import triangulate
from src.core.types import PreconditionError
from src.models.extremal_models import FamilyKind

# a1 is the only interior vertex both A and C see
EXAMPLE_B_METRIC = {"a1": 1.0}


# ============================================================================
# Index sequences
# ============================================================================

def test_j_sequence_walks_to_both_ends():
    js, zero = j_sequence([3.0, 1.0, 2.0, 1.0, 4.0])
    assert js == [1, 2, 4, 5]
    assert zero == 1


def test_j_sequence_of_flat_fan():
    assert j_sequence([0.0, 0.0, 0.0]) == ([1, 2, 3], 0)


def test_j_sequence_minimum_at_start():
    js, zero = j_sequence([0.0, 2.0, 1.0])
    assert js == [1, 3]
    assert zero == 0


def test_fan_weights():
    weights, js, zero = fan_weights([3.0, 1.0, 2.0, 1.0, 4.0], [3.5, 1.5, 2.5, 1.5, 4.5], d=5.0, s=7)
    assert js == [1, 2, 4, 5]
    assert zero == 1
    assert weights == {1: 1.5, 2: 0.0, 4: 2.5, 5: 0.5, 7: 1.5}


def test_f_profile_pads_with_d():
    assert f_profile([0.0, 0.0, 0.0], [1, 2, 3], 0, 1.0, 5) == [0.0, 0.0, 0.0, 1.0, 1.0]


# ============================================================================
# Trace setup
# ============================================================================

def test_stage_order_puts_boundary_last():
    assert stage_order(example_b(1)) == ("a0", "a1", "a2", "A", "B", "C", "D")


def test_stage_order_of_random_triangulation():
    sg = random_triangulated_subdivision(np.random.default_rng(5), max_vertices=16)
    order = stage_order(sg)
    assert order == tuple(sorted(sg.interior_vertices)) + tuple(sorted(sg.boundary))
    # plain ascending order would start with the boundary names p0, p1, ...
    assert order != tuple(sorted(sg.vertices))


def test_init_rejects_non_admissible_metric():
    with pytest.raises(PreconditionError, match="not admissible"):
        init_metric_trace(example_b(1), {"a1": 0.5}, "A", "C")


def test_init_rejects_boundary_weight():
    with pytest.raises(PreconditionError, match="vanish"):
        init_metric_trace(example_b(1), {"a1": 1.0, "A": 0.5}, "A", "C")


def test_init_rejects_negative_weight():
    with pytest.raises(PreconditionError, match="negative"):
        init_metric_trace(example_b(1), {"a1": 1.0, "a0": -0.1}, "A", "C")


def test_init_rejects_adjacent_pair():
    with pytest.raises(PreconditionError):
        init_metric_trace(example_b(1), EXAMPLE_B_METRIC, "A", "B")


def test_step_checks_vertex_order():
    trace = init_metric_trace(example_b(1), EXAMPLE_B_METRIC, "A", "C")
    assert trace.next_vertex == "a0"
    with pytest.raises(PreconditionError, match="Next vertex is a0"):
        extend_metric_step(trace, "a2")
    extend_metric_step(trace, "a0")
    assert trace.processed == ("a0",)


def test_projection_needs_complete_trace():
    trace = init_metric_trace(example_b(1), EXAMPLE_B_METRIC, "A", "C")
    with pytest.raises(PreconditionError, match="processed 0 of 7"):
        project_metric(trace)


# ============================================================================
# Pipeline
# ============================================================================

def test_triangulated_graph_needs_no_new_vertices(hub):
    trace, certificate = run_metric_pipeline(hub, "A", "C", {"x": 1.0})
    assert all(not s.new_vertices for s in trace.stages)
    assert certificate.ratio == pytest.approx(1.0)
    assert certificate.holds


def test_separating_family_on_triangulated_graph(hub):
    trace, certificate = run_metric_pipeline(hub, "A", "C", {"x": 1.0}, FamilyKind.SEPARATING)
    assert trace.family == "separating"
    assert certificate.admissible
    assert certificate.ratio == pytest.approx(1.0)


def test_example_b_pipeline():
    sg = example_b(1)
    trace, certificate = run_metric_pipeline(sg, "A", "C", EXAMPLE_B_METRIC)
    assert len(trace.stages) == 7

    stages = {s.vertex: s for s in trace.stages}
    middle = stages["a1"]
    assert middle.fan_length == 3
    assert sorted(middle.new_vertices.values()) == [1.0, 1.0]
    assert middle.new_weight_total == pytest.approx(2.0 * middle.m)

    # zero-weight vertices only add zero-weight corners
    for v in ("a0", "a2", "A", "B", "C", "D"):
        assert all(w == 0.0 for w in stages[v].new_vertices.values())
    assert all(s.checks_hold for s in trace.stages)

    # one staged vertex per corner of the two quadrilaterals
    assert len(trace.hub_owner) == 8
    assert trace.metric["a1"] == 1.0

    assert certificate.vanishes_on_boundary
    assert certificate.admissible
    assert certificate.area_original == pytest.approx(1.0)
    assert certificate.ratio == pytest.approx(3.0)
    assert certificate.bound == 17
    assert certificate.holds


def test_projection_sums_over_each_face():
    sg = example_b(1)
    trace, certificate = run_metric_pipeline(sg, "A", "C", EXAMPLE_B_METRIC)
    ext = triangulate(sg)
    q = quotient_map(trace, ext)
    assert set(q.values()) <= set(ext.graph.vertices)
    for hub in ext.hubs:
        assert certificate.metric[hub] == pytest.approx(1.0)
    assert certificate.metric["a1"] == 1.0
    assert certificate.metric["a0"] == 0.0


def test_stage_records_serialize():
    trace, _ = run_metric_pipeline(example_b(1), "A", "C", EXAMPLE_B_METRIC)
    record = trace.stages[1].to_dict()
    assert record["vertex"] == "a1"
    assert record["weight_bound"] == {"holds": True, "total": 2.0, "bound": 2.0}
    assert [n["vertex"] for n in record["neighbors"]][:3] == ["A", "a0", "y0"]
