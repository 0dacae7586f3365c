# cli/manifest.py
"""
Scene manifest: one JSON document describing a chart and the fields on it.
Expressions are strings in the expression grammar, parsed against the chart.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.core.analysis.scene import Scene
from src.core.config import Settings, get_settings
from src.core.errors import ManifestError
from src.core.expr.chart import Chart
from src.core.expr.matrix import parse_array
from src.core.expr.parser import parse
from src.core.geometry.fields import ConnectionField, FrameField, MetricField, VolumeForm
from src.core.reductions.time_gauge import parse_vector


class ChartModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int
    coords: list[str]
    domain: list[tuple[float, float]]

    @model_validator(mode="after")
    def _consistent(self) -> "ChartModel":
        if self.dim < 2:
            raise ValueError(f"chart.dim must be at least 2, got {self.dim}")
        if len(self.coords) != self.dim or len(self.domain) != self.dim:
            raise ValueError("chart.coords and chart.domain need one entry per dimension")
        return self


class Options(BaseModel):
    model_config = ConfigDict(extra="forbid")

    samples: Optional[int] = None
    tol: Optional[float] = None
    seed: Optional[int] = None


def _shape(value: Any) -> tuple[int, ...]:
    if isinstance(value, list):
        inner = {_shape(v) for v in value}
        if len(inner) > 1:
            raise ValueError("ragged nested list")
        return (len(value),) + (inner.pop() if inner else ())
    if not isinstance(value, str):
        raise ValueError(f"expected an expression string, got {value!r}")
    return ()


class SceneManifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    chart: ChartModel
    signature: tuple[int, int]
    metric: Optional[list[list[str]]] = None
    frame: Optional[list[list[str]]] = None
    connection: Optional[list[Any]] = None
    weyl_factor: Optional[str] = None
    u: Optional[list[str]] = None
    reference_volume: Optional[str] = None
    options: Options = Field(default_factory=Options)

    @model_validator(mode="after")
    def _shapes(self) -> "SceneManifest":
        n = self.chart.dim
        p, q = self.signature
        if p < 0 or q < 0 or p + q != n:
            raise ValueError(f"signature {list(self.signature)} does not match dim {n}")
        if self.metric is not None and self.frame is not None:
            raise ValueError("give either `metric` or `frame`, not both")
        for name in ("metric", "frame"):
            value = getattr(self, name)
            if value is not None and _shape(value) != (n, n):
                raise ValueError(f"`{name}` must be a {n}x{n} array of expressions")
        if self.connection is not None and _shape(self.connection) not in ((n ** 3,), (n, n, n)):
            raise ValueError(f"`connection` needs {n ** 3} expressions, flat or nested [alpha][mu][beta]")
        if self.u is not None:
            if len(self.u) != n:
                raise ValueError(f"`u` must have {n} components")
            if self.signature != (1, n - 1):
                raise ValueError("`u` needs a Lorentzian signature [1, n-1]")
            if self.metric is None and self.frame is None:
                raise ValueError("`u` needs a metric or a frame")
        if self.weyl_factor is not None and self.metric is None and self.frame is None:
            raise ValueError("`weyl_factor` needs a metric or a frame")
        if self.reference_volume is not None and self.metric is None and self.frame is None:
            raise ValueError("`reference_volume` needs a metric or a frame")
        return self

    def settings(self, base: Optional[Settings] = None, **overrides) -> Settings:
        """Flags override manifest options, which override the environment."""
        base = get_settings() if base is None else base
        return base.replace(
            samples=self.options.samples, tol=self.options.tol, seed=self.options.seed
        ).replace(**overrides)

    def to_scene(self, settings: Optional[Settings] = None) -> Scene:
        try:
            return self._build(settings)
        except ValueError as e:
            raise ManifestError(str(e)) from e

    def _build(self, settings: Optional[Settings]) -> Scene:
        chart = Chart(tuple(self.chart.coords), tuple(self.chart.domain))
        n = chart.dim
        signature = tuple(self.signature)
        g = MetricField.parse(chart, self.metric, signature) if self.metric is not None else None
        f = FrameField.parse(chart, self.frame) if self.frame is not None else None
        c = None
        if self.connection is not None:
            c = ConnectionField(chart, parse_array(self.connection, chart, _shape(self.connection)).reshape(n, n, n))
        return Scene(
            chart=chart,
            signature=signature,
            g=g,
            f=f,
            c=c,
            weyl_factor=parse(self.weyl_factor, chart) if self.weyl_factor is not None else None,
            u=parse_vector(chart, self.u) if self.u is not None else None,
            reference_volume=(
                VolumeForm.parse(chart, self.reference_volume)
                if self.reference_volume is not None else None
            ),
            settings=settings if settings is not None else self.settings(),
        )


def parse_manifest(data: Union[str, bytes, dict]) -> SceneManifest:
    try:
        if isinstance(data, dict):
            return SceneManifest.model_validate(data)
        return SceneManifest.model_validate_json(data)
    except ValidationError as e:
        raise ManifestError(str(e)) from e


def load_manifest(path: Union[str, Path]) -> SceneManifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"cannot read manifest `{path}`: {e}") from e
    return parse_manifest(text)
