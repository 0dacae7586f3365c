# geometry/oracle.py
"""
Finite-difference oracles. They evaluate the defining formulas numerically
(central differences, no symbolic derivative involved) so the symbolic results
can be checked against them.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.core.config import get_settings
from src.core.expr.chart import Chart
from src.core.expr.evaluate import evaluate_many
from src.core.expr.matrix import evaluate_array
from src.core.expr.nodes import Expr
from src.core.geometry.fields import FrameField, MetricField


def central_difference(
    e: Expr, chart: Chart, points: np.ndarray, coord: str, step: Optional[float] = None
) -> np.ndarray:
    step = get_settings().fd_step if step is None else step
    k = chart.index(coord)
    shift = np.zeros(chart.dim)
    shift[k] = step
    return (evaluate_many(e, points + shift, chart) - evaluate_many(e, points - shift, chart)) / (2 * step)


def finite_gradient(
    arr: np.ndarray, chart: Chart, points: np.ndarray, step: Optional[float] = None
) -> np.ndarray:
    """d[m, ..., mu] = d_mu arr[...] at each point m, by central differences."""
    step = get_settings().fd_step if step is None else step
    points = np.atleast_2d(points)
    out = np.empty((points.shape[0],) + arr.shape + (chart.dim,))
    for mu in range(chart.dim):
        shift = np.zeros(chart.dim)
        shift[mu] = step
        plus = evaluate_array(arr, chart, points + shift)
        minus = evaluate_array(arr, chart, points - shift)
        out[..., mu] = (plus - minus) / (2 * step)
    return out


def christoffel_oracle(
    g: MetricField, points: np.ndarray, step: Optional[float] = None
) -> np.ndarray:
    """Christoffel symbols at each point, shape (m, n, n, n), index order [alpha][mu][beta]."""
    gv = evaluate_array(g.g, g.chart, points)
    dg = finite_gradient(np.array(g.g), g.chart, points, step)  # dg[p, l, b, m] = d_m g_lb
    ginv = np.linalg.inv(gv)
    bracket = dg + np.swapaxes(dg, 2, 3) - np.transpose(dg, (0, 3, 2, 1))
    # bracket[p, l, b, m] = d_m g_lb + d_b g_lm - d_l g_mb
    return 0.5 * np.einsum("pal,plbm->pamb", ginv, bracket)


def coframe_derivative_oracle(
    f: FrameField, points: np.ndarray, step: Optional[float] = None
) -> np.ndarray:
    """(d theta^I)_{mn} at each point, shape (m, n, n, n)."""
    dtheta = finite_gradient(np.array(f.theta), f.chart, points, step)  # [p, I, n, m]
    return np.swapaxes(dtheta, 2, 3) - dtheta
