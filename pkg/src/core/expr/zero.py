# expr/zero.py
"""
Probabilistic zero testing.

The outermost +/- chain of an expression is flattened into terms `c * t` with exact
rational coefficients. Structurally equal terms are combined and the constant part
is folded exactly, so a residual such as `a - (a + 1/1000)` reduces to `-1/1000`
before anything is sampled.

What survives is declared zero when its value is within `tol * (1 + scale)` of zero
at every quasi-random sample of the chart box, where `scale` is the largest
magnitude taken by the surviving terms. A single surviving term gets no scale.
Cancelled terms are never evaluated.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from src.core.config import get_settings
from src.core.expr.chart import Chart
from src.core.expr.evaluate import evaluate_many, literal
from src.core.expr.nodes import ONE, BinOp, Const, Expr, Func
from src.core.expr.simplify import simplify

logger = logging.getLogger(__name__)

Term = tuple[Fraction, Expr]


def _coefficient(e: Expr) -> Term:
    """Peel constant factors and negations off a product."""
    if isinstance(e, Const):
        return e.value, ONE
    if isinstance(e, Func) and e.name == "neg":
        c, t = _coefficient(e.arg)
        return -c, t
    if isinstance(e, BinOp) and e.op == "*":
        if isinstance(e.left, Const):
            c, t = _coefficient(e.right)
            return e.left.value * c, t
        if isinstance(e.right, Const):
            c, t = _coefficient(e.left)
            return e.right.value * c, t
    if isinstance(e, BinOp) and e.op == "/" and isinstance(e.right, Const) and e.right.value != 0:
        c, t = _coefficient(e.left)
        return c / e.right.value, t
    return Fraction(1), e


def signed_terms(e: Expr, sign: Fraction = Fraction(1)) -> list[Term]:
    """(coefficient, term) pairs of the outermost +/- chain; constants use the term ONE."""
    if isinstance(e, BinOp) and e.op in ("+", "-"):
        flip = sign if e.op == "+" else -sign
        return signed_terms(e.left, sign) + signed_terms(e.right, flip)
    if isinstance(e, Func) and e.name == "neg":
        return signed_terms(e.arg, -sign)
    c, t = _coefficient(e)
    return [(sign * c, t)]


def collect(e: Expr) -> tuple[Fraction, list[Term]]:
    """Exact constant part and the non-cancelling terms of `e`."""
    combined: dict[Expr, Fraction] = {}
    for c, t in signed_terms(simplify(e)):
        combined[t] = combined.get(t, Fraction(0)) + c
    constant = combined.pop(ONE, Fraction(0))
    return constant, [(c, t) for t, c in combined.items() if c != 0]


def exact_value(e: Expr) -> Optional[Fraction]:
    """The rational value of `e` when every non-constant term cancels, else None."""
    constant, terms = collect(e)
    return None if terms else constant


def residual_values(
    e: Expr, chart: Chart, points: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Values of `e` at `points` and the per-point scale of its surviving terms."""
    constant, terms = collect(e)
    parts = [np.full(len(points), literal(constant))] if constant != 0 else []
    parts += [literal(c) * evaluate_many(t, points, chart) for c, t in terms]
    if not parts:
        zeros = np.zeros(len(points))
        return zeros, zeros
    values = np.sum(parts, axis=0)
    if len(parts) == 1:
        return values, np.zeros_like(values)
    return values, np.max(np.abs(parts), axis=0)


def is_zero(
    e: Expr,
    chart: Chart,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    points: Optional[np.ndarray] = None,
) -> bool:
    settings = get_settings()
    tol = settings.tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    exact = exact_value(e)
    if exact is not None:
        return exact == 0
    if points is None:
        points = chart.sample(samples, seed)
    values, scale = residual_values(e, chart, points)
    ok = bool(np.all(np.abs(values) <= tol * (1.0 + scale)))
    if not ok:
        logger.debug("nonzero residual %.3e over %d samples", float(np.max(np.abs(values))), len(points))
    return ok


def max_abs(
    e: Expr,
    chart: Chart,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    points: Optional[np.ndarray] = None,
) -> float:
    exact = exact_value(e)
    if exact is not None:
        return abs(literal(exact))
    if points is None:
        points = chart.sample(samples, seed)
    values, _ = residual_values(e, chart, points)
    return float(np.max(np.abs(values)))
