# checks.py
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.core.checks.checks_base import CheckOutcome, check
from src.core.config import Settings
from src.core.expr.calculus import differentiate
from src.core.expr.chart import Chart
from src.core.expr.matrix import evaluate_array
from src.core.expr.nodes import Const, Expr, div, mul
from src.core.expr.zero import max_abs
from src.core.geometry.connections import (
    coframe_torsion_residual,
    curvature as curvature_tensor,
    first_bianchi,
    frame_connection,
    frame_gradient,
    levi_civita as levi_civita_of,
    metric_gradient,
    ricci_scalar,
    torsion,
    volume_gradient,
)
from src.core.geometry.fields import ConnectionField, FrameField, MetricField, VolumeForm
from src.core.geometry.metric import conformal_rescale, volume_form
from src.core.geometry.oracle import christoffel_oracle
from src.core.geometry.residuals import Residual, residual_check
from src.core.geometry.weyl import (
    WEYL_FORM_CONSTANT,
    closedness,
    proportionality_residual,
    trace_form,
)
from src.core.reductions.classifier import classify_connection
from src.core.reductions.time_gauge import time_gauge_split

logger = logging.getLogger(__name__)

ORACLE_SAMPLES = 16
ORACLE_TOL = 1e-7


def _run(name: str, entries, chart: Chart, settings: Settings) -> Residual:
    return residual_check(name, entries, chart, settings.samples, settings.tol, settings.seed)


def _antisymmetric(t: np.ndarray) -> list[Expr]:
    """Independent entries of a tensor antisymmetric in its last two indices."""
    n = t.shape[-1]
    lead = t.shape[:-2]
    return [t[idx + (m, k)] for idx in np.ndindex(*lead) for m in range(n) for k in range(m + 1, n)]


def _first_point(chart: Chart, settings: Settings) -> np.ndarray:
    return chart.sample(settings.samples, settings.seed)[:1]


# =====================================================================
# 1. METRIC SCENES
# =====================================================================

@check
def levi_civita(g: MetricField, levi_civita_connection: ConnectionField, settings: Settings) -> CheckOutcome:
    """Levi-Civita connection: torsion-free, metric-compatible, matches the finite-difference oracle."""
    c = levi_civita_connection
    chart = g.chart
    n = g.n
    q = metric_gradient(c, g)
    symmetric = _run("symmetric", _antisymmetric(torsion(c)), chart, settings)
    compatible = _run(
        "metric_compatible",
        [q[m, a, b] for m in range(n) for a in range(n) for b in range(a, n)],
        chart, settings,
    )

    points = chart.sample(ORACLE_SAMPLES, settings.seed)
    symbolic = evaluate_array(c.gamma, chart, points)
    oracle = christoffel_oracle(g, points)
    error = np.abs(symbolic - oracle)
    oracle_ok = bool(np.all(error <= ORACLE_TOL * (1.0 + np.abs(oracle))))
    match = Residual("christoffel_oracle", oracle_ok, float(error.max()), len(points))
    logger.debug("christoffel oracle: max deviation %.3e over %d points", match.max_residual, len(points))

    return CheckOutcome(
        (symmetric, compatible, match),
        {"gamma_at_sample": symbolic[0].tolist(), "sample_point": points[0].tolist()},
    )


@check
def curvature(metric: MetricField, levi_civita_connection: ConnectionField, settings: Settings) -> CheckOutcome:
    """Curvature of the Levi-Civita connection: first Bianchi identity and Ricci scalar."""
    c = levi_civita_connection
    riemann = curvature_tensor(c)
    bianchi = _run("bianchi_first", first_bianchi(riemann).ravel(), c.chart, settings)
    scalar = ricci_scalar(c, metric, riemann)
    points = c.chart.sample(settings.samples, settings.seed)
    values = evaluate_array(np.array([scalar], dtype=object), c.chart, points)[:, 0]
    return CheckOutcome((bianchi,), {"ricci_scalar": values.tolist()})


# =====================================================================
# 2. FRAME SCENES
# =====================================================================

@check
def weitzenbock(
    f: FrameField, metric: MetricField, weitzenbock_connection: ConnectionField, settings: Settings
) -> CheckOutcome:
    """Weitzenbock connection: preserves the frame and its AP-metric, flat, torsion = d theta."""
    c = weitzenbock_connection
    chart = f.chart
    n = f.n
    q = metric_gradient(c, metric)
    residuals = (
        _run("frame_preserved", frame_gradient(c, f).ravel(), chart, settings),
        _run("flat", _antisymmetric(curvature_tensor(c)), chart, settings),
        _run("torsion_matches_dtheta", _antisymmetric(coframe_torsion_residual(c, f)), chart, settings),
        _run(
            "ap_metric_preserved",
            [q[m, a, b] for m in range(n) for a in range(n) for b in range(a, n)],
            chart, settings,
        ),
        _run("frame_connection_zero", frame_connection(c, f).ravel(), chart, settings),
    )
    points = chart.sample(settings.samples, settings.seed)
    magnitude = max(
        (max_abs(e, chart, points=points) for e in _antisymmetric(torsion(c))), default=0.0
    )
    return CheckOutcome(
        residuals,
        {
            "torsion_max": magnitude,
            "torsion_nonzero": magnitude > settings.tol,
            "ap_metric_at_sample": evaluate_array(metric.g, chart, points[:1])[0].tolist(),
        },
    )


# =====================================================================
# 3. CONNECTION SCENES
# =====================================================================

@check(counted=False)
def classification(
    c: ConnectionField,
    settings: Settings,
    metric: Optional[MetricField] = None,
    f: Optional[FrameField] = None,
    reference_volume: Optional[VolumeForm] = None,
) -> CheckOutcome:
    """Which structures the given connection preserves."""
    report = classify_connection(
        c, g=metric, f=f, vol=reference_volume,
        samples=settings.samples, tol=settings.tol, seed=settings.seed,
    )
    residuals = tuple(
        Residual(name, flag.value, flag.max_residual, report.sample_count)
        for name, flag in report.flags.items()
    )
    extracted = {"classification": report.to_dict()}
    if report.weyl_form is not None:
        extracted["classification_weyl_form_at_sample"] = report.weyl_form.at(
            _first_point(c.chart, settings)[0]
        ).tolist()
    return CheckOutcome(residuals, extracted)


# =====================================================================
# 4. REDUCED STRUCTURES
# =====================================================================

@check
def weyl(metric: MetricField, weyl_factor: Expr, settings: Settings) -> CheckOutcome:
    """Weyl form of levi_civita(Omega^2 g) against g: extracted, equal to c0 d ln Omega, closed."""
    chart = metric.chart
    rescaled = conformal_rescale(metric, weyl_factor, settings.samples, settings.seed)
    c = levi_civita_of(rescaled, settings.samples, settings.seed)
    q = metric_gradient(c, metric)
    form = trace_form(q, metric)
    extracted_ok = proportionality_residual(
        q, form.components, metric, settings.samples, settings.tol, settings.seed
    )
    c0 = Const(WEYL_FORM_CONSTANT)
    expected = [
        mul(c0, div(differentiate(weyl_factor, coord), weyl_factor)) for coord in chart.coords
    ]
    matches = _run(
        "form_matches_factor",
        [a - b for a, b in zip(form.components, expected)],
        chart, settings,
    )
    closed = closedness(form, settings.samples, settings.tol, settings.seed)
    return CheckOutcome(
        (
            Residual("form_extracted", extracted_ok.passed, extracted_ok.max_residual, extracted_ok.sample_count),
            matches,
            Residual("integrable", closed.passed, closed.max_residual, closed.sample_count),
        ),
        {
            "weyl_form_at_sample": form.at(_first_point(chart, settings)[0]).tolist(),
            "weyl_form_constant": WEYL_FORM_CONSTANT,
        },
    )


@check
def time_gauge(metric: MetricField, tetrad: FrameField, u: tuple, settings: Settings) -> CheckOutcome:
    """Time gauge: triad orthonormal and orthogonal to the unit timelike field u."""
    split = time_gauge_split(tetrad, metric, u, settings.samples, settings.tol, settings.seed)
    point = _first_point(metric.chart, settings)[0]
    short = {r.name: r.name.split(".", 1)[-1] for r in split.residuals}
    residuals = tuple(
        Residual(short[r.name], r.passed, r.max_residual, r.sample_count) for r in split.residuals
    )
    return CheckOutcome(residuals, {"tetrad_at_sample": split.at(point).tolist()})


@check
def unimodular(
    metric: MetricField,
    reference_volume: VolumeForm,
    levi_civita_connection: ConnectionField,
    settings: Settings,
) -> CheckOutcome:
    """Unimodular structure: Vol_g equals the reference volume and Levi-Civita preserves it."""
    chart = metric.chart
    vol = volume_form(metric, settings.samples, settings.seed)
    return CheckOutcome(
        (
            _run("volume_matches_reference", [vol.density - reference_volume.density], chart, settings),
            _run(
                "levi_civita_volume_preserving",
                volume_gradient(levi_civita_connection, reference_volume),
                chart, settings,
            ),
        ),
    )
