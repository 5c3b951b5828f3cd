"""Test report encoding, envelopes and trace files."""
import hashlib
import json
from enum import Enum
from fractions import Fraction

import numpy as np

from src.core.types import Verdict
from src.utils.reports import Report, encode_value, input_digest, write_jsonl, write_report, write_text


class Color(str, Enum):
    RED = "red"


def test_encode_exact_and_infinite_values():
    assert encode_value(Fraction(3, 2)) == {"num": 3, "den": 2}
    assert encode_value(float("inf")) == "inf"
    assert encode_value(float("-inf")) == "-inf"
    assert encode_value(float("nan")) is None
    assert encode_value(True) is True
    assert encode_value(Color.RED) == "red"


def test_encode_containers():
    assert encode_value({"b", "a"}) == ["a", "b"]
    assert encode_value((1, Fraction(1, 3))) == [1, {"num": 1, "den": 3}]
    assert encode_value({1: [0.5]}) == {"1": [0.5]}
    assert encode_value(np.float64(0.25)) == 0.25
    assert encode_value(np.int64(4)) == 4


def test_encode_to_dict_objects():
    encoded = encode_value(Verdict.failed("cut", witness=("a", "b")))
    assert encoded == {"ok": False, "reason": "cut", "witness": ["a", "b"]}


def test_input_digest():
    assert input_digest(None) is None
    assert input_digest("abc") == hashlib.sha256(b"abc").hexdigest()
    assert input_digest(b"abc") == input_digest("abc")


def test_report_envelope():
    report = Report("ew", seed=5, input_sha256="00", result={"width": float("inf")}, extra={"pair": ("A", "C")})
    data = report.to_dict()
    assert data["schema_version"] == 1
    assert data["tool_version"] == "0.3.0"
    assert data["seed"] == 5
    assert data["ok"] is True
    assert data["result"] == {"width": "inf"}
    assert data["pair"] == ["A", "C"]
    assert json.loads(report.to_json()) == data


def test_write_report_to_file(tmp_path):
    out = tmp_path / "nested" / "report.json"
    write_report(Report("faces", seed=0), out)
    text = out.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(text)["command"] == "faces"


def test_write_text_to_stdout(capsys):
    write_text("hello", None)
    assert capsys.readouterr().out == "hello\n"


def test_write_jsonl(tmp_path):
    path = tmp_path / "trace.jsonl"
    count = write_jsonl(({"k": k, "x": Fraction(k, 2)} for k in range(3)), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert count == len(lines) == 3
    assert json.loads(lines[1]) == {"k": 1, "x": {"num": 1, "den": 2}}
