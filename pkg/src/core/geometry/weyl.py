# geometry/weyl.py
"""
Weyl forms and their integrability.

For c = levi_civita(exp(2 lam) g) applied to g, the extracted form is A = -2 d lam.
The constant is frozen in WEYL_FORM_CONSTANT; extracting against Omega^2 g instead
of g shifts A by +2 d ln(Omega).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from src.core.errors import NotProportional
from src.core.expr.calculus import differentiate
from src.core.expr.matrix import readonly, zeros
from src.core.expr.nodes import Const, mul, neg, total
from src.core.geometry.connections import metric_gradient
from src.core.geometry.fields import ConnectionField, CovectorField, MetricField, same_chart
from src.core.geometry.residuals import Residual, residual_check

logger = logging.getLogger(__name__)

WEYL_FORM_CONSTANT = -2


def weyl_form_extract(
    c: ConnectionField,
    g: MetricField,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> CovectorField:
    """
    A with (nabla g)_{mab} = A_m g_{ab}, via the trace A_m = (nabla g)_{mab} g^{ab} / n.
    Raises NotProportional when the full proportionality residual does not vanish.
    """
    chart = same_chart(c, g)
    q = metric_gradient(c, g)
    form = trace_form(q, g)
    check = proportionality_residual(q, form.components, g, samples=samples, tol=tol, seed=seed)
    if not check.passed:
        raise NotProportional(
            f"nabla g is not proportional to g (max residual {check.max_residual:.3e})"
        )
    logger.debug("weyl form extracted on %s", chart.coords)
    return form


def trace_form(q: np.ndarray, g: MetricField) -> CovectorField:
    """A_m = (nabla g)_{mab} g^{ab} / n, the only candidate for nabla g = A (x) g."""
    n = g.n
    inv_n = Const(Fraction(1, n))
    a = zeros((n,))
    for m in range(n):
        a[m] = mul(inv_n, total(mul(q[m, i, j], g.inverse[i, j]) for i in range(n) for j in range(n)))
    return CovectorField(g.chart, a)


def proportionality_residual(
    q: np.ndarray,
    a: np.ndarray,
    g: MetricField,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> Residual:
    n = g.n
    entries = [
        q[m, i, j] - mul(a[m], g.g[i, j])
        for m in range(n) for i in range(n) for j in range(i, n)
    ]
    return residual_check("weyl.proportional", entries, g.chart, samples, tol, seed)


def exterior_derivative(form: CovectorField) -> np.ndarray:
    """(dA)_{mn} = d_m A_n - d_n A_m."""
    coords = form.chart.coords
    n = form.n
    out = zeros((n, n))
    for m in range(n):
        for k in range(m + 1, n):
            entry = differentiate(form.components[k], coords[m]) - differentiate(
                form.components[m], coords[k]
            )
            out[m, k] = entry
            out[k, m] = neg(entry)
    return readonly(out)


def closedness(
    form: CovectorField,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> Residual:
    d = exterior_derivative(form)
    n = form.n
    entries = [d[m, k] for m in range(n) for k in range(m + 1, n)]
    return residual_check("weyl.closed", entries, form.chart, samples, tol, seed)


def is_closed(
    form: CovectorField,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> bool:
    """Closed forms are exact on a box, so the Weyl structure is locally integrable."""
    return closedness(form, samples, tol, seed).passed
