"""Shared fixtures for the test suite."""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.generators import example_a, quad_with_hub  # noqa: E402
from src.core.graph_core import build_plane_graph, rotation_from_positions  # noqa: E402
from src.core.settings_manager import SettingsManager  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from the bundled settings and without PD_SEED."""
    monkeypatch.delenv("PD_SEED", raising=False)
    SettingsManager().reset()
    yield
    SettingsManager().reset()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def triangle():
    return build_plane_graph(["A", "B", "C"], {"A": ["B", "C"], "B": ["C", "A"], "C": ["A", "B"]})


@pytest.fixture
def k4():
    positions = {"a": (0.0, 0.0), "b": (2.0, 0.0), "c": (1.0, 2.0), "d": (1.0, 0.7)}
    edges = [("a", "b"), ("b", "c"), ("c", "a"), ("d", "a"), ("d", "b"), ("d", "c")]
    return build_plane_graph(positions, rotation_from_positions(positions, edges))


@pytest.fixture
def square():
    positions = {"A": (0.0, 0.0), "B": (1.0, 0.0), "C": (1.0, 1.0), "D": (0.0, 1.0)}
    edges = [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")]
    return build_plane_graph(positions, rotation_from_positions(positions, edges))


@pytest.fixture
def hub():
    return quad_with_hub()


@pytest.fixture
def example_a_graph():
    return example_a()
