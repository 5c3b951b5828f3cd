"""Test the command-line front door: envelopes, exit codes and seeds."""
import json

import pytest

from main import RunConfig, config_from_args, run
from src.constants import Command, ExitCode
from src.core.generators import coxeter_from_positions, example_a, quad_with_hub, right_angled_wheel
from src.core.graph_core import serialize_plane_graph

ENVELOPE_KEYS = {"schema_version", "tool_version", "command", "input_sha256", "seed", "ok", "result"}


def write_doc(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def subdivision_doc(sg):
    return serialize_plane_graph(sg.graph, sg.weights, sg.boundary)


@pytest.fixture
def example_a_file(tmp_path):
    return write_doc(tmp_path / "a.json", subdivision_doc(example_a()))


def read_report(capsys):
    return json.loads(capsys.readouterr().out)


# ============================================================================
# Reports
# ============================================================================

def test_gen_example_writes_a_graph_document(tmp_path):
    out = tmp_path / "b.json"
    assert run(RunConfig(Command.GEN_EXAMPLE, output=out, which="B", n=2)) == ExitCode.OK
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["outer_face"] == ["A", "B", "C", "D"]
    assert len(doc["vertices"]) == 9


def test_faces_report(example_a_file, capsys):
    assert run(RunConfig(Command.FACES, input=example_a_file)) == ExitCode.OK
    report = read_report(capsys)
    assert ENVELOPE_KEYS <= set(report)
    assert report["schema_version"] == 1
    assert report["command"] == "faces"
    assert len(report["input_sha256"]) == 64
    assert report["result"]["vertices"] == 7
    assert report["result"]["euler"] == 2


def test_ew_report(example_a_file, capsys):
    assert run(RunConfig(Command.EW, input=example_a_file)) == ExitCode.OK
    report = read_report(capsys)
    assert report["result"]["width"] == pytest.approx(2 / 3, abs=1e-9)
    assert report["family"] == {"kind": "connecting", "pair": ["A", "C"]}
    assert report["complexity"] == 3


def test_ew_of_separating_family_with_pair(example_a_file, tmp_path):
    out = tmp_path / "ew.json"
    config = RunConfig(Command.EW, input=example_a_file, output=out, family="separating", pair=("B", "D"))
    assert run(config) == ExitCode.OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["result"]["width"] == pytest.approx(2 / 3, abs=1e-9)


def test_duality_report(example_a_file, capsys):
    assert run(RunConfig(Command.DUALITY, input=example_a_file, oracle=True)) == ExitCode.OK
    assert read_report(capsys)["ok"]


def test_extend_metric_writes_trace(example_a_file, tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    assert run(RunConfig(Command.EXTEND_METRIC, input=example_a_file, trace=trace)) == ExitCode.OK
    report = read_report(capsys)
    lines = trace.read_text(encoding="utf-8").splitlines()
    assert len(lines) == report["stages"] == 7
    assert json.loads(lines[0])["vertex"]


def test_layout_writes_svg(tmp_path, capsys):
    source = tmp_path / "flower.json"
    assert run(RunConfig(Command.GEN_EXAMPLE, output=source, which="hexflower")) == ExitCode.OK
    svg = tmp_path / "flower.svg"
    assert run(RunConfig(Command.LAYOUT, input=source, svg=svg, labels=True)) == ExitCode.OK
    report = read_report(capsys)
    assert report["result"]["diagnostics"]["overlaps"] == []
    assert svg.read_text(encoding="utf-8").startswith("<svg")


# ============================================================================
# Exit codes
# ============================================================================

def test_failed_realizability_check_exits_one(tmp_path, capsys):
    positions = {"a": (0.0, 0.0), "b": (4.0, 0.0), "c": (2.0, 4.0), "d": (2.0, 1.5), "e": (2.0, 0.5)}
    weights = {
        ("a", "b"): 2, ("b", "d"): 2, ("d", "a"): 2,
        ("b", "c"): 0, ("c", "a"): 0, ("d", "c"): 0,
        ("e", "a"): 0, ("e", "b"): 0, ("e", "d"): 0,
    }
    cg = coxeter_from_positions(positions, weights)
    path = write_doc(tmp_path / "cg.json", serialize_plane_graph(cg.graph, cg.weights))
    assert run(RunConfig(Command.CHECK_REALIZABLE, input=path)) == ExitCode.VERDICT_FALSE
    report = read_report(capsys)
    assert report["ok"] is False


def test_cylindrical_subdivision_exits_one(tmp_path, capsys):
    path = write_doc(tmp_path / "hub.json", subdivision_doc(quad_with_hub(hub_code=2)))
    assert run(RunConfig(Command.CHECK_ACYLINDRICAL, input=path)) == ExitCode.VERDICT_FALSE
    assert read_report(capsys)["route"] == "subdivision"


def test_acylindrical_subdivision_exits_zero(tmp_path, capsys):
    path = write_doc(tmp_path / "hub.json", subdivision_doc(quad_with_hub()))
    assert run(RunConfig(Command.CHECK_ACYLINDRICAL, input=path)) == ExitCode.OK
    assert read_report(capsys)["ok"] is True


def test_missing_input_exits_two(tmp_path, capsys):
    assert run(RunConfig(Command.FACES, input=tmp_path / "nope.json")) == ExitCode.INPUT_ERROR
    assert "error" in capsys.readouterr().err


def test_bad_json_exits_two(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert run(RunConfig(Command.FACES, input=path)) == ExitCode.INPUT_ERROR


def test_subdivision_command_needs_outer_face(tmp_path, capsys):
    cg = quad_with_hub()
    path = write_doc(tmp_path / "g.json", serialize_plane_graph(cg.graph))
    assert run(RunConfig(Command.EW, input=path)) == ExitCode.INPUT_ERROR
    assert "outer_face" in capsys.readouterr().err


@pytest.mark.parametrize("changes", [
    {"input": None},
    {"n": 0},
    {"boundary_radius": 0.0},
    {"tol": -1.0},
    {"max_cuts": 0},
    {"family": "sideways"},
])
def test_invalid_flags_exit_two(example_a_file, changes):
    values = {"input": example_a_file}
    values.update(changes)
    assert run(RunConfig(Command.LAYOUT, **values)) == ExitCode.INPUT_ERROR


# ============================================================================
# Seeds and parsing
# ============================================================================

def test_seed_flag(example_a_file, capsys):
    run(RunConfig(Command.FACES, input=example_a_file, seed=3))
    assert read_report(capsys)["seed"] == 3


def test_environment_seed_wins(example_a_file, capsys, monkeypatch):
    monkeypatch.setenv("PD_SEED", "7")
    run(RunConfig(Command.FACES, input=example_a_file, seed=3))
    assert read_report(capsys)["seed"] == 7


def test_bad_environment_seed_exits_two(example_a_file, monkeypatch):
    monkeypatch.setenv("PD_SEED", "seven")
    assert run(RunConfig(Command.FACES, input=example_a_file)) == ExitCode.INPUT_ERROR


def test_random_example_is_reproducible(tmp_path):
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    run(RunConfig(Command.GEN_EXAMPLE, output=first, which="random-triangulated", seed=11))
    run(RunConfig(Command.GEN_EXAMPLE, output=second, which="random-triangulated", seed=11))
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")


def test_config_from_args():
    config = config_from_args(["ew", "g.json", "--pair", "B, D", "--family", "separating", "--oracle"])
    assert config.command == Command.EW
    assert config.pair == ("B", "D")
    assert config.family == "separating"
    assert config.oracle
    assert str(config.input) == "g.json"


def test_config_from_args_defaults():
    config = config_from_args(["gen-example"])
    assert config.which == "A"
    assert config.n == 1
    assert config.input is None
    assert config.boundary_radius == 1.0


def test_config_from_args_rejects_bad_pair():
    with pytest.raises(SystemExit):
        config_from_args(["ew", "g.json", "--pair", "A"])


def test_right_angled_connection_is_cylindrical(tmp_path, capsys):
    wheel = right_angled_wheel()
    path = write_doc(tmp_path / "wheel.json", serialize_plane_graph(wheel.graph, wheel.weights))
    assert run(RunConfig(Command.CHECK_ACYLINDRICAL, input=path)) == ExitCode.VERDICT_FALSE
    report = read_report(capsys)
    assert report["route"] == "coxeter"
    assert report["result"]["witness"] == ["v1", "x", "v3"]


def test_adjacent_pair_exits_two(example_a_file, capsys):
    assert run(RunConfig(Command.EW, input=example_a_file, pair=("A", "B"))) == ExitCode.INPUT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_duality_product_of_example_a(example_a_file, capsys):
    assert run(RunConfig(Command.DUALITY, input=example_a_file)) == ExitCode.OK
    assert read_report(capsys)["result"]["product"] == pytest.approx(1.0, abs=1e-6)
