# geometry/residuals.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from src.core.config import get_settings
from src.core.expr.chart import Chart
from src.core.expr.evaluate import literal
from src.core.expr.nodes import Expr
from src.core.expr.zero import exact_value, residual_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Residual:
    """Outcome of a vanishing test over a family of expressions."""

    name: str
    passed: bool
    max_residual: float
    sample_count: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "sample_count": self.sample_count,
        }


def residual_check(
    name: str,
    entries: Iterable[Expr],
    chart: Chart,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> Residual:
    """
    Every entry must vanish at every sample point within tol * (1 + scale).
    Entries whose terms cancel exactly are decided without sampling.
    """
    settings = get_settings()
    tol = settings.tol if tol is None else tol
    points = chart.sample(samples, seed)
    passed = True
    worst = 0.0
    checked = 0
    for e in np.asarray(list(entries), dtype=object).ravel():
        exact = exact_value(e)
        if exact is not None:
            worst = max(worst, abs(literal(exact)))
            passed = passed and exact == 0
            continue
        values, scale = residual_values(e, chart, points)
        worst = max(worst, float(np.max(np.abs(values))))
        passed = passed and bool(np.all(np.abs(values) <= tol * (1.0 + scale)))
        checked += 1
    logger.debug("%s: %d sampled entries, max residual %.3e", name, checked, worst)
    if not passed:
        logger.info("%s does not vanish: max residual %.3e (tol %.1e)", name, worst, tol)
    return Residual(name, passed, worst, len(points))
