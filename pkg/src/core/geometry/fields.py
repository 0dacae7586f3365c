# geometry/fields.py
"""
Chart-local field types. Tensors are numpy object arrays of Expr, read-only once
built. Index conventions:

    MetricField.g[mu, nu]                 g_{mu nu}
    FrameField.e[mu, I]                   e_I^mu      (column I is the frame vector e_I)
    FrameField.theta[I, mu]               theta^I_mu  (the co-frame, inverse of e)
    ConnectionField.gamma[alpha, mu, beta]  Gamma^alpha_{mu beta}, mu the derivative index
    CovectorField.components[mu]          A_mu
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from src.core.config import get_settings
from src.core.errors import ChartMismatch, NonPositiveFactor, SingularFrame, SingularMetric
from src.core.expr.chart import Chart
from src.core.expr.evaluate import evaluate_many
from src.core.expr.matrix import (
    det,
    evaluate_array,
    expr_array,
    inverse,
    matmul,
    parse_array,
    readonly,
    structurally_symmetric,
)
from src.core.expr.nodes import Expr, as_expr, is_const
from src.core.expr.parser import parse
from src.core.expr.zero import is_zero
from src.core.frames.types import signature_of

logger = logging.getLogger(__name__)


def same_chart(*fields) -> Chart:
    charts = [f.chart for f in fields if f is not None]
    for c in charts[1:]:
        if c != charts[0]:
            raise ChartMismatch(f"fields live on different charts: {charts[0]} and {c}")
    return charts[0]


def _check_shape(arr: np.ndarray, shape: tuple[int, ...], what: str) -> None:
    if arr.shape != shape:
        raise ValueError(f"{what} must have shape {shape}, got {arr.shape}")


@dataclass(frozen=True, eq=False)
class MetricField:
    chart: Chart
    g: np.ndarray
    signature: tuple[int, int]

    def __post_init__(self):
        n = self.chart.dim
        g = expr_array(self.g)
        _check_shape(g, (n, n), "metric")
        if not structurally_symmetric(g):
            raise ValueError("metric components must be symmetric")
        p, q = self.signature
        if p + q != n:
            raise ValueError(f"signature {self.signature} does not match dimension {n}")
        object.__setattr__(self, "g", readonly(g))
        object.__setattr__(self, "signature", (int(p), int(q)))

    @classmethod
    def parse(cls, chart: Chart, rows: Sequence[Sequence[str]], signature: tuple[int, int]) -> "MetricField":
        n = chart.dim
        return cls(chart, parse_array(rows, chart, (n, n)), signature)

    @property
    def n(self) -> int:
        return self.chart.dim

    @cached_property
    def _inverse(self) -> tuple[np.ndarray, Expr]:
        inv, det = inverse(np.array(self.g))
        return readonly(inv), det

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse[0]

    @property
    def det(self) -> Expr:
        return self._inverse[1]

    def ensure_nondegenerate(
        self, samples: Optional[int] = None, seed: Optional[int] = None
    ) -> None:
        """det g must not vanish and the signature must be the declared one on the box."""
        if is_const(self.det, 0) or is_zero(self.det, self.chart, samples=samples, seed=seed):
            raise SingularMetric("det g vanishes on the domain box")
        points = self.chart.sample(samples, seed)
        dets = evaluate_many(self.det, points, self.chart)
        if np.any(np.abs(dets) <= get_settings().singular_tol):
            raise SingularMetric("det g vanishes at a sample point")
        values = evaluate_array(self.g, self.chart, points)
        for k, m in enumerate(values):
            if signature_of(m) != self.signature:
                raise SingularMetric(
                    f"signature {signature_of(m)} at {self.chart.point(points[k])}, "
                    f"expected {self.signature}"
                )

    def at(self, point: Sequence[float]) -> np.ndarray:
        return evaluate_array(self.g, self.chart, np.atleast_2d(point))[0]


@dataclass(frozen=True, eq=False)
class FrameField:
    """
    Moving frame in the coordinate basis. The co-frame is computed as the symbolic
    inverse of `e` unless it is supplied (then `e` and `theta` must be inverse).
    """

    chart: Chart
    e: np.ndarray
    theta: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.chart.dim
        e = expr_array(self.e)
        _check_shape(e, (n, n), "frame")
        if self.theta is None:
            theta, _ = inverse(e)
        else:
            theta = expr_array(self.theta)
            _check_shape(theta, (n, n), "co-frame")
        object.__setattr__(self, "e", readonly(e))
        object.__setattr__(self, "theta", readonly(theta))

    @classmethod
    def parse(cls, chart: Chart, rows: Sequence[Sequence[str]]) -> "FrameField":
        """`rows[mu][I]` is the component e_I^mu."""
        n = chart.dim
        return cls(chart, parse_array(rows, chart, (n, n)))

    @classmethod
    def from_coframe(cls, chart: Chart, theta) -> "FrameField":
        theta = expr_array(theta)
        e, _ = inverse(theta)
        return cls(chart, e, theta)

    @property
    def n(self) -> int:
        return self.chart.dim

    @cached_property
    def det(self) -> Expr:
        """det of e (the co-frame determinant is its reciprocal)."""
        return det(np.array(self.e))

    def ensure_invertible(self, samples: Optional[int] = None, seed: Optional[int] = None) -> None:
        if is_const(self.det, 0) or is_zero(self.det, self.chart, samples=samples, seed=seed):
            raise SingularFrame("frame determinant vanishes on the domain box")
        points = self.chart.sample(samples, seed)
        if np.any(np.abs(evaluate_many(self.det, points, self.chart)) <= get_settings().singular_tol):
            raise SingularFrame("frame determinant vanishes at a sample point")

    def consistency_residual(self) -> np.ndarray:
        """e . theta - 1, entrywise."""
        prod = matmul(np.array(self.e), np.array(self.theta))
        n = self.n
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = prod[i, j] - (1 if i == j else 0)
        return out

    def vector(self, i: int) -> tuple[Expr, ...]:
        return tuple(self.e[:, i])


@dataclass(frozen=True, eq=False)
class ConnectionField:
    chart: Chart
    gamma: np.ndarray

    def __post_init__(self):
        n = self.chart.dim
        gamma = expr_array(self.gamma)
        _check_shape(gamma, (n, n, n), "connection")
        object.__setattr__(self, "gamma", readonly(gamma))

    @classmethod
    def parse(cls, chart: Chart, nested) -> "ConnectionField":
        """`nested[alpha][mu][beta]` is Gamma^alpha_{mu beta}."""
        n = chart.dim
        return cls(chart, parse_array(nested, chart, (n, n, n)))

    @property
    def n(self) -> int:
        return self.chart.dim

    def at(self, point: Sequence[float]) -> np.ndarray:
        return evaluate_array(self.gamma, self.chart, np.atleast_2d(point))[0]


@dataclass(frozen=True, eq=False)
class CovectorField:
    chart: Chart
    components: np.ndarray

    def __post_init__(self):
        comps = expr_array(self.components)
        _check_shape(comps, (self.chart.dim,), "covector")
        object.__setattr__(self, "components", readonly(comps))

    @property
    def n(self) -> int:
        return self.chart.dim

    def at(self, point: Sequence[float]) -> np.ndarray:
        return evaluate_array(self.components, self.chart, np.atleast_2d(point))[0]


@dataclass(frozen=True, eq=False)
class VolumeForm:
    """Coefficient of dx^1 ^ ... ^ dx^n; positive on the box."""

    chart: Chart
    density: Expr

    def __post_init__(self):
        object.__setattr__(self, "density", as_expr(self.density))

    @classmethod
    def parse(cls, chart: Chart, source: str) -> "VolumeForm":
        return cls(chart, parse(source, chart))

    def ensure_positive(self, samples: Optional[int] = None, seed: Optional[int] = None) -> None:
        if is_const(self.density, 0) or is_zero(self.density, self.chart, samples=samples, seed=seed):
            raise NonPositiveFactor("volume density vanishes")
        points = self.chart.sample(samples, seed)
        if np.any(evaluate_many(self.density, points, self.chart) <= 0):
            raise NonPositiveFactor("volume density is not positive on the box")
