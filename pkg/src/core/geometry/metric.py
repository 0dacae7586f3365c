# geometry/metric.py
from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from src.core.config import get_settings
from src.core.errors import NonPositiveFactor, SingularMetric
from src.core.expr.evaluate import evaluate_many
from src.core.expr.matrix import det as matrix_det, is_diagonal, zeros
from src.core.expr.nodes import ONE, Const, Expr, as_expr, div, is_const, mul, neg, power, sqrt, total
from src.core.expr.zero import is_zero
from src.core.frames.types import eta
from src.core.geometry.fields import FrameField, MetricField, VolumeForm

logger = logging.getLogger(__name__)


def inverse_metric(g: MetricField) -> np.ndarray:
    return g.inverse


def ap_metric(f: FrameField, signature: tuple[int, int]) -> MetricField:
    """g_{mn} = eta_{IJ} theta^I_m theta^J_n; the frame is orthonormal for it."""
    n = f.n
    p, q = signature
    if p + q != n:
        raise ValueError(f"signature {signature} does not match dimension {n}")
    signs = np.diag(eta(p, q))
    g = zeros((n, n))
    for m in range(n):
        for k in range(m, n):
            g[m, k] = g[k, m] = total(
                mul(Const(int(signs[i])), mul(f.theta[i, m], f.theta[i, k])) for i in range(n)
            )
    return MetricField(f.chart, g, signature)


def conformal_rescale(
    g: MetricField,
    omega: Expr,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> MetricField:
    """Omega^2 g. Omega must not vanish on the box."""
    omega = as_expr(omega)
    if is_const(omega):
        if omega.value == 0:
            raise NonPositiveFactor("conformal factor is zero")
    else:
        points = g.chart.sample(samples, seed)
        values = evaluate_many(omega, points, g.chart)
        if np.any(np.abs(values) <= get_settings().singular_tol):
            raise NonPositiveFactor("Omega^2 is not positive on the box")
    factor = power(omega, Const(2))
    n = g.n
    out = zeros((n, n))
    for m in range(n):
        for k in range(m, n):
            out[m, k] = out[k, m] = mul(factor, g.g[m, k])
    logger.debug("conformal rescale by %s", omega)
    return MetricField(g.chart, out, g.signature)


def volume_form(
    g: MetricField, samples: Optional[int] = None, seed: Optional[int] = None
) -> VolumeForm:
    """density = sqrt(|det g|); the sign of det g is fixed by the signature."""
    det = g.det
    if is_const(det, 0) or is_zero(det, g.chart, samples=samples, seed=seed):
        raise SingularMetric("det g vanishes on the domain box")
    points = g.chart.sample(samples, seed)
    values = evaluate_many(det, points, g.chart)
    if np.all(values > 0):
        return VolumeForm(g.chart, sqrt(det))
    if np.all(values < 0):
        return VolumeForm(g.chart, sqrt(neg(det)))
    raise SingularMetric("det g changes sign on the domain box")


def frame_volume(f: FrameField) -> VolumeForm:
    """Volume element of a moving frame, det theta = 1 / det e."""
    return VolumeForm(f.chart, matrix_det(np.array(f.theta)))


def conformal_representative(g: MetricField, point: Sequence[float]) -> np.ndarray:
    """Metric at a point rescaled to |det| = 1, the representative of its conformal class."""
    m = g.at(point)
    n = g.n
    d = abs(np.linalg.det(m))
    if d <= get_settings().singular_tol:
        raise SingularMetric(f"degenerate metric at {g.chart.point(point)}")
    return m / d ** (1.0 / n)


def orthonormal_frame(
    g: MetricField, samples: Optional[int] = None, seed: Optional[int] = None
) -> FrameField:
    """
    e_I = |g_ii|^(-1/2) d_i for a diagonal metric, timelike legs first. The sign of
    each g_ii is read off the samples and must not change on the box.
    """
    n = g.n
    if not is_diagonal(g.g):
        raise ValueError("orthonormal_frame needs a diagonal metric")
    points = g.chart.sample(samples, seed)
    signs = []
    for i in range(n):
        values = evaluate_many(g.g[i, i], points, g.chart)
        if not (np.all(values > 0) or np.all(values < 0)):
            raise SingularMetric(f"g_{i}{i} vanishes or changes sign on the domain box")
        signs.append(1 if values[0] > 0 else -1)
    order = sorted(range(n), key=lambda i: signs[i])
    e = zeros((n, n))
    for leg, i in enumerate(order):
        length2 = g.g[i, i] if signs[i] > 0 else neg(g.g[i, i])
        e[i, leg] = div(ONE, sqrt(length2))
    return FrameField(g.chart, e)
