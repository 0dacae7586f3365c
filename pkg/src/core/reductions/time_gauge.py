# reductions/time_gauge.py
"""
Time gauge: the reduction SO(1,n-1) -> SO(n-1) that keeps the tetrads whose timelike
leg is a fixed unit vector field u. The remaining freedom is a rotation of the
spatial triad.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.core.config import get_settings
from src.core.errors import NotOrthonormal, NotTimelike, NotUnit, SingularProjection, UnsupportedSpec
from src.core.expr.chart import Chart
from src.core.expr.evaluate import evaluate_many
from src.core.expr.matrix import evaluate_array, expr_array
from src.core.expr.nodes import ONE, Expr, as_expr, div, mul, sqrt, total
from src.core.expr.parser import parse
from src.core.geometry.fields import FrameField, MetricField, same_chart
from src.core.geometry.residuals import Residual, residual_check

logger = logging.getLogger(__name__)

Vector = tuple[Expr, ...]


def inner(g: MetricField, a: Sequence[Expr], b: Sequence[Expr]) -> Expr:
    n = g.n
    return total(mul(g.g[i, j], mul(a[i], b[j])) for i in range(n) for j in range(n))


def _combine(a: Sequence[Expr], coeff: Expr, b: Sequence[Expr]) -> Vector:
    """a + coeff * b."""
    return tuple(x + mul(coeff, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class TimeGaugeSplit:
    chart: Chart
    u: Vector
    triad: tuple[Vector, ...]
    residuals: tuple[Residual, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    def tetrad(self) -> FrameField:
        """Frame with e_0 = u and the triad as spatial legs."""
        columns = (self.u,) + self.triad
        n = len(columns)
        e = expr_array([[columns[i][mu] for i in range(n)] for mu in range(n)])
        return FrameField(self.chart, e)

    def at(self, point: Sequence[float]) -> np.ndarray:
        """Numeric tetrad at a point, legs as columns."""
        return evaluate_array(np.array(self.tetrad().e), self.chart, np.atleast_2d(point))[0]


def parse_vector(chart: Chart, sources: Sequence[str | Expr]) -> Vector:
    if len(sources) != chart.dim:
        raise ValueError(f"vector must have {chart.dim} components, got {len(sources)}")
    return tuple(parse(s, chart) if isinstance(s, str) else as_expr(s) for s in sources)


def frame_gram(g: MetricField, f: FrameField) -> list[Expr]:
    """Entries of g(e_I, e_J) - eta_IJ for I <= J, eta = diag(-1, 1, ..., 1)."""
    n = g.n
    return [
        inner(g, f.vector(i), f.vector(j)) - (0 if i != j else -1 if i == 0 else 1)
        for i in range(n) for j in range(i, n)
    ]


def check_triad(
    g: MetricField,
    u: Sequence[Expr],
    triad: Sequence[Sequence[Expr]],
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> tuple[Residual, Residual]:
    """Residuals of g(e_i, e_j) = delta_ij and g(u, e_i) = 0."""
    k = len(triad)
    gram = [
        inner(g, triad[i], triad[j]) - (1 if i == j else 0)
        for i in range(k) for j in range(i, k)
    ]
    orth = [inner(g, u, t) for t in triad]
    return (
        residual_check("time_gauge.triad_orthonormal", gram, g.chart, samples, tol, seed),
        residual_check("time_gauge.u_orthogonal", orth, g.chart, samples, tol, seed),
    )


def time_gauge_split(
    f: FrameField,
    g: MetricField,
    u: Sequence[Expr | str],
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> TimeGaugeSplit:
    """
    Triad spanning the g-orthogonal complement of u, built by Gram-Schmidt from the
    spatial legs e_1..e_{n-1} of f after projecting out u: v -> v + g(u, v) u.
    f itself must be orthonormal for g with e_0 timelike, else NotOrthonormal.
    """
    chart = same_chart(f, g)
    n = g.n
    if g.signature != (1, n - 1):
        raise UnsupportedSpec(f"time gauge needs signature (1, {n - 1}), got {g.signature}")
    u = parse_vector(chart, u)
    singular_tol = get_settings().singular_tol
    points = chart.sample(samples, seed)

    norm = inner(g, u, u)
    values = evaluate_many(norm, points, chart)
    if np.any(values >= 0):
        k = int(np.argmax(values))
        raise NotTimelike(f"g(u, u) = {values[k]:.3e} at {chart.point(points[k])}")
    unit = residual_check("time_gauge.u_unit", [norm + ONE], chart, samples, tol, seed)
    if not unit.passed:
        raise NotUnit(f"g(u, u) differs from -1 by up to {unit.max_residual:.3e}")

    triad: list[Vector] = []
    for leg in range(1, n):
        v = f.vector(leg)
        w = _combine(v, inner(g, u, v), u)
        for t in triad:
            w = _combine(w, -inner(g, w, t), t)
        length2 = inner(g, w, w)
        lengths = evaluate_many(length2, points, chart)
        if np.any(lengths <= singular_tol):
            raise SingularProjection(f"frame leg e_{leg} is parallel to u or to earlier legs")
        length = sqrt(length2)
        triad.append(tuple(div(x, length) for x in w))

    frame = residual_check("time_gauge.frame_orthonormal", frame_gram(g, f), chart, samples, tol, seed)
    if not frame.passed:
        raise NotOrthonormal(f"g(e_I, e_J) differs from eta by up to {frame.max_residual:.3e}")

    residuals = (unit,) + check_triad(g, u, triad, samples, tol, seed)
    logger.debug("time gauge split on %s: %s", chart.coords, [r.passed for r in residuals])
    return TimeGaugeSplit(chart, u, tuple(triad), residuals)
