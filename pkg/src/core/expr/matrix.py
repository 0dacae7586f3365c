# expr/matrix.py
"""Small symbolic linear algebra over numpy object arrays of Expr."""

from __future__ import annotations

import numpy as np

from src.core.expr.chart import Chart
from src.core.expr.evaluate import evaluate_many
from src.core.expr.nodes import ONE, ZERO, Expr, as_expr, div, is_const, mul, neg, total
from src.core.expr.parser import parse


def expr_array(values, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Object array of Expr built from nested sequences of Expr / numbers."""
    raw = np.array(values, dtype=object)
    if shape is not None and raw.shape != shape:
        raise ValueError(f"expected shape {shape}, got {raw.shape}")
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        out[idx] = as_expr(v)
    return out


def parse_array(sources, chart: Chart, shape: tuple[int, ...]) -> np.ndarray:
    raw = np.array(sources, dtype=object)
    if raw.shape != shape:
        raise ValueError(f"expected shape {shape}, got {raw.shape}")
    out = np.empty(shape, dtype=object)
    for idx, src in np.ndenumerate(raw):
        out[idx] = parse(str(src), chart)
    return out


def zeros(shape: tuple[int, ...]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def readonly(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def is_diagonal(m: np.ndarray) -> bool:
    n = m.shape[0]
    return all(is_const(m[i, j], 0) for i in range(n) for j in range(n) if i != j)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise ValueError("shape mismatch")
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            out[i, j] = total(mul(a[i, l], b[l, j]) for l in range(k))
    return out


def det(m: np.ndarray) -> Expr:
    """Laplace expansion along the row with the most structural zeros."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return m[0, 0]
    if n == 2:
        return mul(m[0, 0], m[1, 1]) - mul(m[0, 1], m[1, 0])
    row = max(range(n), key=lambda i: sum(is_const(x, 0) for x in m[i]))
    terms = []
    for j in range(n):
        if is_const(m[row, j], 0):
            continue
        minor = np.delete(np.delete(m, row, axis=0), j, axis=1)
        term = mul(m[row, j], det(minor))
        terms.append(term if (row + j) % 2 == 0 else neg(term))
    return total(terms)


def inverse(m: np.ndarray) -> tuple[np.ndarray, Expr]:
    """Inverse and determinant. The caller decides whether the determinant vanishes."""
    n = m.shape[0]
    d = det(m)
    out = zeros((n, n))
    if is_diagonal(m):
        for i in range(n):
            out[i, i] = div(ONE, m[i, i])
        return out, d
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, j, axis=0), i, axis=1)
            cof = det(minor) if n > 1 else ONE
            out[i, j] = div(cof if (i + j) % 2 == 0 else neg(cof), d)
    return out, d


def structurally_symmetric(m: np.ndarray) -> bool:
    n = m.shape[0]
    return all(m[i, j] == m[j, i] for i in range(n) for j in range(i + 1, n))


def evaluate_array(arr: np.ndarray, chart: Chart, points: np.ndarray) -> np.ndarray:
    """Numeric values of every entry at every point, shape (len(points), *arr.shape)."""
    points = np.atleast_2d(points)
    out = np.empty((points.shape[0],) + arr.shape)
    for idx, e in np.ndenumerate(arr):
        out[(slice(None),) + idx] = evaluate_many(e, points, chart)
    return out
