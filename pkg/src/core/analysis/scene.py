# analysis/scene.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from src.core.config import Settings, get_settings
from src.core.expr.chart import Chart
from src.core.expr.matrix import identity, is_diagonal
from src.core.expr.nodes import Expr
from src.core.geometry.connections import levi_civita, weitzenbock
from src.core.geometry.fields import ConnectionField, FrameField, MetricField, VolumeForm
from src.core.geometry.metric import ap_metric, orthonormal_frame
from src.core.reductions.dof import DofReport, connection_ledger, dof_table
from src.core.reductions.specs import ReductionSpec

logger = logging.getLogger(__name__)

# derived objects and the inputs they are built from
_DERIVED = {
    "metric": ("g", "f"),
    "levi_civita_connection": ("g", "f"),
    "weitzenbock_connection": ("f",),
    "tetrad": ("g", "f"),
}


@dataclass(frozen=True, eq=False)
class Scene:
    """
    Everything one analysis works on. At most one of `g` / `f` is given; when only
    the frame is, `metric` is its AP-metric.
    """

    chart: Chart
    signature: tuple[int, int]
    g: Optional[MetricField] = None
    f: Optional[FrameField] = None
    c: Optional[ConnectionField] = None
    weyl_factor: Optional[Expr] = None
    u: Optional[tuple[Expr, ...]] = None
    reference_volume: Optional[VolumeForm] = None
    settings: Settings = field(default_factory=get_settings)

    def __post_init__(self):
        if self.g is not None and self.f is not None:
            raise ValueError("a scene takes a metric or a frame, not both")

    @property
    def n(self) -> int:
        return self.chart.dim

    def has(self, name: str) -> bool:
        if name in ("chart", "signature", "settings"):
            return True
        if name in _DERIVED:
            return any(getattr(self, base) is not None for base in _DERIVED[name])
        return getattr(self, name, None) is not None

    @cached_property
    def metric(self) -> Optional[MetricField]:
        if self.g is not None:
            return self.g
        if self.f is not None:
            return ap_metric(self.f, self.signature)
        return None

    @cached_property
    def levi_civita_connection(self) -> ConnectionField:
        return levi_civita(self.metric, samples=self.settings.samples, seed=self.settings.seed)

    @cached_property
    def weitzenbock_connection(self) -> ConnectionField:
        return weitzenbock(self.f, samples=self.settings.samples, seed=self.settings.seed)

    @cached_property
    def tetrad(self) -> FrameField:
        """The given frame; for a metric, its orthonormal frame when g is diagonal."""
        if self.f is not None:
            return self.f
        if is_diagonal(self.g.g):
            return orthonormal_frame(self.g, self.settings.samples, self.settings.seed)
        return FrameField(self.chart, identity(self.n))

    def reductions(self) -> list[ReductionSpec]:
        specs = []
        if self.g is not None:
            specs.append(ReductionSpec("O", self.n, self.signature))
        if self.f is not None:
            specs.append(ReductionSpec("Teleparallel", self.n, self.signature))
        if self.weyl_factor is not None:
            specs.append(ReductionSpec("Weyl", self.n, self.signature))
        if self.u is not None:
            specs.append(ReductionSpec("TimeGauge", self.n, self.signature))
        if self.reference_volume is not None:
            specs.append(ReductionSpec("Unimodular", self.n, self.signature))
        return specs

    def dof(self) -> dict[str, dict]:
        out = {}
        for spec in self.reductions():
            report: DofReport = dof_table(spec)
            out[spec.label()] = {**report.to_dict(), "connections": connection_ledger(spec)}
        return out
