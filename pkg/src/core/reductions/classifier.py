# reductions/classifier.py
"""
Which reduced structures a connection preserves.

Every flag is an independent residual test; nothing is inferred from other flags,
so an inconsistent context (a metric unrelated to the frame) just yields false flags.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from src.core.errors import MissingContext
from src.core.geometry.connections import (
    curvature,
    frame_gradient,
    metric_gradient,
    torsion,
    volume_gradient,
)
from src.core.geometry.fields import (
    ConnectionField,
    CovectorField,
    FrameField,
    MetricField,
    VolumeForm,
    same_chart,
)
from src.core.geometry.residuals import residual_check
from src.core.geometry.weyl import closedness, proportionality_residual, trace_form

logger = logging.getLogger(__name__)

FLAGS = ("symmetric", "metric", "weyl", "frame_preserving", "flat", "volume_preserving")

# context object each flag needs, None for flags of the connection alone
_NEEDS = {
    "symmetric": None,
    "flat": None,
    "metric": "g",
    "weyl": "g",
    "frame_preserving": "f",
    "volume_preserving": "vol",
}

# structure preserved when the flag holds
STRUCTURES = {
    "metric": "orthogonal",
    "weyl": "conformal",
    "frame_preserving": "teleparallel",
    "volume_preserving": "special_linear",
}


@dataclass(frozen=True)
class Flag:
    value: bool
    max_residual: float

    def to_dict(self) -> dict:
        return {"value": self.value, "max_residual": self.max_residual}


@dataclass(frozen=True)
class ClassificationReport:
    flags: dict[str, Flag]
    weyl_form: Optional[CovectorField] = None
    weyl_closed: Optional[Flag] = None
    sample_count: int = 0

    def __getitem__(self, name: str) -> bool:
        return self.flags[name].value

    def get(self, name: str) -> Optional[bool]:
        flag = self.flags.get(name)
        return None if flag is None else flag.value

    @property
    def preserved_structures(self) -> tuple[str, ...]:
        names = [STRUCTURES[k] for k in FLAGS if k in STRUCTURES and self.get(k)]
        if self.get("metric") and self.get("volume_preserving"):
            names.append("unimodular")
        return tuple(names)

    def to_dict(self) -> dict:
        out = {name: flag.to_dict() for name, flag in self.flags.items()}
        if self.weyl_closed is not None:
            out["weyl_closed"] = self.weyl_closed.to_dict()
        out["preserved_structures"] = list(self.preserved_structures)
        return out


def _flag(name: str, entries: Iterable, chart, samples, tol, seed) -> Flag:
    r = residual_check(f"classify.{name}", entries, chart, samples, tol, seed)
    return Flag(r.passed, r.max_residual)


def classify_connection(
    c: ConnectionField,
    g: Optional[MetricField] = None,
    f: Optional[FrameField] = None,
    vol: Optional[VolumeForm] = None,
    flags: Optional[Iterable[str]] = None,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> ClassificationReport:
    """
    Evaluate the requested flags (all applicable ones when `flags` is None).
    Raises MissingContext when a requested flag needs an absent context object.
    """
    chart = same_chart(c, g, f, vol)
    context = {"g": g, "f": f, "vol": vol}
    if flags is None:
        if g is None and f is None and vol is None:
            raise MissingContext("classification needs a metric, a frame or a volume form")
        wanted = [k for k in FLAGS if _NEEDS[k] is None or context[_NEEDS[k]] is not None]
    else:
        wanted = list(flags)
        for name in wanted:
            if name not in _NEEDS:
                raise ValueError(f"unknown flag `{name}`")
            need = _NEEDS[name]
            if need is not None and context[need] is None:
                raise MissingContext(f"flag `{name}` needs `{need}`")

    n = c.n
    out: dict[str, Flag] = {}
    weyl_form = None
    weyl_closed = None
    q = None
    if "symmetric" in wanted:
        t = torsion(c)
        out["symmetric"] = _flag(
            "symmetric", [t[a, m, k] for a in range(n) for m in range(n) for k in range(m + 1, n)],
            chart, samples, tol, seed,
        )
    if "metric" in wanted or "weyl" in wanted:
        q = metric_gradient(c, g)
    if "metric" in wanted:
        out["metric"] = _flag(
            "metric", [q[m, a, b] for m in range(n) for a in range(n) for b in range(a, n)],
            chart, samples, tol, seed,
        )
    if "weyl" in wanted:
        weyl_form = trace_form(q, g)
        r = proportionality_residual(q, weyl_form.components, g, samples, tol, seed)
        out["weyl"] = Flag(r.passed, r.max_residual)
        if r.passed:
            closed = closedness(weyl_form, samples, tol, seed)
            weyl_closed = Flag(closed.passed, closed.max_residual)
        else:
            weyl_form = None
    if "frame_preserving" in wanted:
        out["frame_preserving"] = _flag(
            "frame_preserving", frame_gradient(c, f).ravel(), chart, samples, tol, seed
        )
    if "flat" in wanted:
        r = curvature(c)
        out["flat"] = _flag(
            "flat",
            [r[a, s, m, k] for a in range(n) for s in range(n) for m in range(n) for k in range(m + 1, n)],
            chart, samples, tol, seed,
        )
    if "volume_preserving" in wanted:
        out["volume_preserving"] = _flag(
            "volume_preserving", volume_gradient(c, vol), chart, samples, tol, seed
        )

    report = ClassificationReport(
        flags=out,
        weyl_form=weyl_form,
        weyl_closed=weyl_closed,
        sample_count=len(chart.sample(samples, seed)),
    )
    logger.debug("classified connection on %s: %s", chart.coords, report.preserved_structures)
    return report
