# geometry/connections.py
"""
Linear connections in a coordinate frame and their invariants.

Index order for Gamma^alpha_{mu beta} is [alpha][mu][beta]; mu is the derivative
direction. Curvature follows

    R^rho_{sigma mu nu} = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma}
                        + Gamma^rho_{mu lambda} Gamma^lambda_{nu sigma}
                        - Gamma^rho_{nu lambda} Gamma^lambda_{mu sigma}

with index order [rho][sigma][mu][nu].
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from src.core.expr.calculus import differentiate
from src.core.expr.matrix import readonly, zeros
from src.core.expr.nodes import ZERO, Const, Expr, mul, neg, total
from src.core.geometry.fields import (
    ConnectionField,
    FrameField,
    MetricField,
    VolumeForm,
    same_chart,
)

logger = logging.getLogger(__name__)

HALF = Const(Fraction(1, 2))


def _partials(arr: np.ndarray, coords: tuple[str, ...]) -> np.ndarray:
    """d[..., mu] = d_mu arr[...]."""
    out = np.empty(arr.shape + (len(coords),), dtype=object)
    for idx, e in np.ndenumerate(arr):
        for m, c in enumerate(coords):
            out[idx + (m,)] = differentiate(e, c)
    return out


def levi_civita(
    g: MetricField, samples: Optional[int] = None, seed: Optional[int] = None
) -> ConnectionField:
    """
    Gamma^a_{mb} = 1/2 g^{al} (d_m g_{lb} + d_b g_{lm} - d_l g_{mb}).
    Raises SingularMetric when det g vanishes on the box.
    """
    g.ensure_nondegenerate(samples=samples, seed=seed)
    n = g.n
    ginv = g.inverse
    dg = _partials(np.array(g.g), g.chart.coords)  # dg[l, b, m] = d_m g_{lb}
    gamma = zeros((n, n, n))
    for a in range(n):
        for m in range(n):
            for b in range(m, n):
                entry = total(
                    mul(ginv[a, l], dg[l, b, m] + dg[l, m, b] - dg[m, b, l])
                    for l in range(n)
                )
                gamma[a, m, b] = gamma[a, b, m] = mul(HALF, entry)
    logger.debug("levi_civita: built %d coefficients on %s", n ** 3, g.chart.coords)
    return ConnectionField(g.chart, gamma)


def weitzenbock(
    f: FrameField, samples: Optional[int] = None, seed: Optional[int] = None
) -> ConnectionField:
    """
    The connection for which the moving frame is parallel:
    Gamma^a_{mb} = e_I^a d_m theta^I_b.
    """
    f.ensure_invertible(samples=samples, seed=seed)
    n = f.n
    dtheta = _partials(np.array(f.theta), f.chart.coords)  # dtheta[I, b, m]
    gamma = zeros((n, n, n))
    for a in range(n):
        for m in range(n):
            for b in range(n):
                gamma[a, m, b] = total(mul(f.e[a, i], dtheta[i, b, m]) for i in range(n))
    logger.debug("weitzenbock: built %d coefficients on %s", n ** 3, f.chart.coords)
    return ConnectionField(f.chart, gamma)


def torsion(c: ConnectionField) -> np.ndarray:
    """T^a_{mn} = Gamma^a_{mn} - Gamma^a_{nm}, index order [a][m][n]."""
    n = c.n
    t = zeros((n, n, n))
    for a in range(n):
        for m in range(n):
            for k in range(m + 1, n):
                entry = c.gamma[a, m, k] - c.gamma[a, k, m]
                t[a, m, k] = entry
                t[a, k, m] = neg(entry)
    return readonly(t)


def curvature(c: ConnectionField) -> np.ndarray:
    n = c.n
    coords = c.chart.coords
    gam = c.gamma
    r = zeros((n, n, n, n))
    for rho in range(n):
        for sigma in range(n):
            for m in range(n):
                for k in range(m + 1, n):
                    entry = (
                        differentiate(gam[rho, k, sigma], coords[m])
                        - differentiate(gam[rho, m, sigma], coords[k])
                        + total(mul(gam[rho, m, l], gam[l, k, sigma]) for l in range(n))
                        - total(mul(gam[rho, k, l], gam[l, m, sigma]) for l in range(n))
                    )
                    r[rho, sigma, m, k] = entry
                    r[rho, sigma, k, m] = neg(entry)
    return readonly(r)


def ricci_tensor(c: ConnectionField, riemann: Optional[np.ndarray] = None) -> np.ndarray:
    """Ric_{sn} = R^m_{s m n}."""
    r = curvature(c) if riemann is None else riemann
    n = c.n
    ric = zeros((n, n))
    for s in range(n):
        for k in range(n):
            ric[s, k] = total(r[m, s, m, k] for m in range(n))
    return readonly(ric)


def ricci_scalar(
    c: ConnectionField, g: MetricField, riemann: Optional[np.ndarray] = None
) -> Expr:
    same_chart(c, g)
    ric = ricci_tensor(c, riemann)
    n = c.n
    return total(mul(g.inverse[s, k], ric[s, k]) for s in range(n) for k in range(n))


def first_bianchi(riemann: np.ndarray) -> np.ndarray:
    """Cyclic sum R^r_{smn} + R^r_{mns} + R^r_{nsm}; vanishes for torsion-free connections."""
    n = riemann.shape[0]
    out = zeros((n, n, n, n))
    for r, s, m, k in np.ndindex(n, n, n, n):
        out[r, s, m, k] = riemann[r, s, m, k] + riemann[r, m, k, s] + riemann[r, k, s, m]
    return readonly(out)


def metric_gradient(c: ConnectionField, g: MetricField) -> np.ndarray:
    """(nabla g)_{m a b} = d_m g_{ab} - Gamma^l_{ma} g_{lb} - Gamma^l_{mb} g_{al}."""
    chart = same_chart(c, g)
    n = c.n
    q = zeros((n, n, n))
    for m, coord in enumerate(chart.coords):
        for a in range(n):
            for b in range(a, n):
                entry = (
                    differentiate(g.g[a, b], coord)
                    - total(mul(c.gamma[l, m, a], g.g[l, b]) for l in range(n))
                    - total(mul(c.gamma[l, m, b], g.g[a, l]) for l in range(n))
                )
                q[m, a, b] = q[m, b, a] = entry
    return readonly(q)


def frame_gradient(c: ConnectionField, f: FrameField) -> np.ndarray:
    """nabla_m e_I^a = d_m e_I^a + Gamma^a_{mb} e_I^b, index order [I][m][a]."""
    chart = same_chart(c, f)
    n = c.n
    out = zeros((n, n, n))
    for i in range(n):
        for m, coord in enumerate(chart.coords):
            for a in range(n):
                out[i, m, a] = differentiate(f.e[a, i], coord) + total(
                    mul(c.gamma[a, m, b], f.e[b, i]) for b in range(n)
                )
    return readonly(out)


def frame_connection(c: ConnectionField, f: FrameField) -> np.ndarray:
    """
    Connection coefficients in the moving frame,
    omega^I_{mJ} = theta^I_a (d_m e_J^a + Gamma^a_{mb} e_J^b), index order [I][m][J].
    """
    grad = frame_gradient(c, f)
    n = c.n
    out = zeros((n, n, n))
    for i in range(n):
        for m in range(n):
            for j in range(n):
                out[i, m, j] = total(mul(f.theta[i, a], grad[j, m, a]) for a in range(n))
    return readonly(out)


def coframe_derivative(f: FrameField) -> np.ndarray:
    """(d theta^I)_{mn} = d_m theta^I_n - d_n theta^I_m, index order [I][m][n]."""
    coords = f.chart.coords
    n = f.n
    out = zeros((n, n, n))
    for i in range(n):
        for m in range(n):
            for k in range(m + 1, n):
                entry = differentiate(f.theta[i, k], coords[m]) - differentiate(
                    f.theta[i, m], coords[k]
                )
                out[i, m, k] = entry
                out[i, k, m] = neg(entry)
    return readonly(out)


def coframe_torsion_residual(c: ConnectionField, f: FrameField) -> np.ndarray:
    """theta^I_a T^a_{mn} - (d theta^I)_{mn}; vanishes for the Weitzenbock connection of f."""
    same_chart(c, f)
    t = torsion(c)
    dtheta = coframe_derivative(f)
    n = c.n
    out = zeros((n, n, n))
    for i, m, k in np.ndindex(n, n, n):
        if m == k:
            continue
        out[i, m, k] = total(mul(f.theta[i, a], t[a, m, k]) for a in range(n)) - dtheta[i, m, k]
    return readonly(out)


def volume_gradient(c: ConnectionField, vol: VolumeForm) -> np.ndarray:
    """nabla_m rho = d_m rho - Gamma^l_{ml} rho."""
    chart = same_chart(c, vol)
    n = c.n
    out = zeros((n,))
    for m, coord in enumerate(chart.coords):
        trace = total(c.gamma[l, m, l] for l in range(n))
        out[m] = differentiate(vol.density, coord) - mul(trace, vol.density)
    return readonly(out)


def is_structurally_zero(c: ConnectionField) -> bool:
    return all(e == ZERO for e in c.gamma.ravel())
