# expr/evaluate.py
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

import numpy as np

from src.core.errors import DomainError
from src.core.expr.chart import Chart
from src.core.expr.nodes import CONSTANTS, BinOp, Const, Expr, Func, NamedConst, Var


def literal(value: Fraction) -> float:
    try:
        return float(value)
    except OverflowError:
        raise DomainError("literal exceeds float range") from None


def _fail(message: str, mask: np.ndarray, env: Mapping[str, np.ndarray]) -> DomainError:
    where = int(np.flatnonzero(mask)[0])
    at = {k: float(v[where]) for k, v in env.items()}
    return DomainError(f"{message} at {at}")


class _Evaluator:
    """Evaluates one tree over a batch of points, sharing repeated subtrees."""

    def __init__(self, env: Mapping[str, np.ndarray], size: int):
        self.env = env
        self.size = size
        self.memo: dict[Expr, np.ndarray] = {}

    def __call__(self, e: Expr) -> np.ndarray:
        hit = self.memo.get(e)
        if hit is not None:
            return hit
        out = self._eval(e)
        self.memo[e] = out
        return out

    def _eval(self, e: Expr) -> np.ndarray:
        if isinstance(e, Const):
            return np.full(self.size, literal(e.value))
        if isinstance(e, NamedConst):
            return np.full(self.size, CONSTANTS[e.name])
        if isinstance(e, Var):
            try:
                return self.env[e.name]
            except KeyError:
                raise DomainError(f"no value for coordinate `{e.name}`") from None
        if isinstance(e, Func):
            return self._func(e.name, self(e.arg))
        if isinstance(e, BinOp):
            return self._binop(e, self(e.left), self(e.right))
        raise TypeError(f"unknown node {e!r}")

    def _func(self, name: str, x: np.ndarray) -> np.ndarray:
        if name == "neg":
            return -x
        if name == "log":
            bad = x <= 0
            if bad.any():
                raise _fail("log of a non-positive value", bad, self.env)
            return np.log(x)
        if name == "sqrt":
            bad = x < 0
            if bad.any():
                raise _fail("sqrt of a negative value", bad, self.env)
            return np.sqrt(x)
        if name == "tan":
            bad = np.isclose(np.cos(x), 0.0, atol=1e-15)
            if bad.any():
                raise _fail("tan at a pole", bad, self.env)
        with np.errstate(over="ignore"):
            out = getattr(np, name)(x)
        bad = ~np.isfinite(out)
        if bad.any():
            raise _fail(f"{name} overflow", bad, self.env)
        return out

    def _binop(self, e: BinOp, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            bad = b == 0
            if bad.any():
                raise _fail("division by zero", bad, self.env)
            return a / b
        # pow
        integral = isinstance(e.right, Const) and e.right.value.denominator == 1
        if integral:
            bad = (a == 0) & (b < 0)
        else:
            bad = (a < 0) | ((a == 0) & (b <= 0))
        if bad.any():
            raise _fail("power outside its domain", bad, self.env)
        with np.errstate(over="ignore"):
            out = np.power(a, b)
        bad = ~np.isfinite(out)
        if bad.any():
            raise _fail("power overflow", bad, self.env)
        return out


def evaluate_many(e: Expr, points: np.ndarray, chart: Chart) -> np.ndarray:
    """Evaluate `e` at each row of `points` (shape (m, chart.dim)); returns shape (m,)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    env = {name: points[:, i] for i, name in enumerate(chart.coords)}
    return _Evaluator(env, points.shape[0])(e)


def evaluate(e: Expr, point: Mapping[str, float]) -> float:
    """
    Evaluate `e` at a single point given as coordinate -> value.
    Raises DomainError outside the domain of any subexpression.
    """
    env = {k: np.array([float(v)]) for k, v in point.items()}
    value = float(_Evaluator(env, 1)(e)[0])
    if not math.isfinite(value):
        raise DomainError(f"non-finite value at {dict(point)}")
    return value
