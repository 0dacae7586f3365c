# geometry/perturbations.py
"""
Pointwise dimension of the space of connection perturbations dGamma that keep a
structure preserved. The constraints are linear in dGamma at a fixed point, so
the dimension is (unknowns - rank) of the stacked constraint matrix.

dGamma^a_{mb} is flattened as a * n^2 + m * n + b. The Weyl kinds append the
n components of the Weyl form perturbation as extra unknowns; since g != 0 they
are determined by dGamma, so the kernel dimension is that of the dGamma space.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.core.config import get_settings

logger = logging.getLogger(__name__)

KINDS = (
    "all",
    "metric",
    "weyl",
    "symmetric",
    "symmetric_metric",
    "symmetric_weyl",
    "frame",
    "volume",
    "symmetric_volume",
)


def _index(n: int, a: int, m: int, b: int) -> int:
    return a * n * n + m * n + b


def metric_constraints(g: np.ndarray, with_weyl: bool = False) -> np.ndarray:
    """dGamma^l_{ma} g_{lb} + dGamma^l_{mb} g_{al} (- a_m g_{ab}) = 0 for a <= b."""
    n = g.shape[0]
    width = n ** 3 + (n if with_weyl else 0)
    rows = []
    for m in range(n):
        for a in range(n):
            for b in range(a, n):
                row = np.zeros(width)
                for l in range(n):
                    row[_index(n, l, m, a)] += g[l, b]
                    row[_index(n, l, m, b)] += g[a, l]
                if with_weyl:
                    row[n ** 3 + m] = -g[a, b]
                rows.append(row)
    return np.array(rows)


def symmetric_constraints(n: int, width: int) -> np.ndarray:
    rows = []
    for a in range(n):
        for m in range(n):
            for b in range(m + 1, n):
                row = np.zeros(width)
                row[_index(n, a, m, b)] = 1.0
                row[_index(n, a, b, m)] = -1.0
                rows.append(row)
    return np.array(rows)


def frame_constraints(e: np.ndarray) -> np.ndarray:
    """dGamma^a_{mb} e_I^b = 0 for every I, a, m (e[b, I] = e_I^b)."""
    n = e.shape[0]
    rows = []
    for i in range(n):
        for a in range(n):
            for m in range(n):
                row = np.zeros(n ** 3)
                for b in range(n):
                    row[_index(n, a, m, b)] = e[b, i]
                rows.append(row)
    return np.array(rows)


def volume_constraints(n: int, width: int) -> np.ndarray:
    """dGamma^l_{ml} = 0."""
    rows = []
    for m in range(n):
        row = np.zeros(width)
        for l in range(n):
            row[_index(n, l, m, l)] = 1.0
        rows.append(row)
    return np.array(rows)


def preserving_dimension(
    kind: str,
    n: int,
    g: Optional[np.ndarray] = None,
    e: Optional[np.ndarray] = None,
    rank_tol: Optional[float] = None,
) -> int:
    """
    Dimension of the affine space of connections preserving the structure at a point,
    computed as a numeric rank. `g` (metric values) is needed by the metric and Weyl
    kinds, `e` (frame values) by the frame kind.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown constraint kind `{kind}`")
    rank_tol = get_settings().rank_tol if rank_tol is None else rank_tol
    weyl = kind in ("weyl", "symmetric_weyl")
    width = n ** 3 + (n if weyl else 0)
    blocks = []
    if kind in ("metric", "weyl", "symmetric_metric", "symmetric_weyl"):
        if g is None:
            raise ValueError(f"`{kind}` constraints need metric values")
        blocks.append(metric_constraints(np.asarray(g, dtype=float), with_weyl=weyl))
    if kind.startswith("symmetric"):
        blocks.append(symmetric_constraints(n, width))
    if kind == "frame":
        if e is None:
            raise ValueError("`frame` constraints need frame values")
        blocks.append(frame_constraints(np.asarray(e, dtype=float)))
    if kind in ("volume", "symmetric_volume"):
        blocks.append(volume_constraints(n, width))
    if not blocks:
        return width
    matrix = np.vstack(blocks)
    rank = int(np.linalg.matrix_rank(matrix, tol=rank_tol))
    logger.debug("%s: %d constraints, rank %d, unknowns %d", kind, len(matrix), rank, width)
    return width - rank
