from pathlib import Path

import numpy as np
import pytest

from src.core.expr.chart import Chart
from src.core.geometry.fields import FrameField, MetricField

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def plane() -> Chart:
    return Chart(("x", "y"), ((0.1, 1.0), (0.1, 1.0)))


@pytest.fixture
def sphere_chart() -> Chart:
    return Chart(("theta", "phi"), ((0.2, 2.9), (0.0, 6.0)))


@pytest.fixture
def sphere(sphere_chart) -> MetricField:
    return MetricField.parse(sphere_chart, [["1", "0"], ["0", "sin(theta)^2"]], (0, 2))


@pytest.fixture
def polar_chart() -> Chart:
    return Chart(("r", "phi"), ((0.5, 3.0), (0.0, 6.0)))


@pytest.fixture
def polar_metric(polar_chart) -> MetricField:
    return MetricField.parse(polar_chart, [["1", "0"], ["0", "r^2"]], (0, 2))


@pytest.fixture
def polar_frame(polar_chart) -> FrameField:
    """e_1 = d_r, e_2 = (1/r) d_phi."""
    return FrameField.parse(polar_chart, [["1", "0"], ["0", "1/r"]])


@pytest.fixture
def minkowski_chart() -> Chart:
    return Chart(("t", "x", "y", "z"), ((-1.0, 1.0), (0.1, 1.0), (0.1, 1.0), (-1.0, 1.0)))


@pytest.fixture
def minkowski(minkowski_chart) -> MetricField:
    rows = [["0"] * 4 for _ in range(4)]
    for i, v in enumerate(["-1", "1", "1", "1"]):
        rows[i][i] = v
    return MetricField.parse(minkowski_chart, rows, (1, 3))
