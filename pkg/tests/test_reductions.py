import numpy as np
import pytest

from src.core.errors import (
    GeometryError,
    MissingContext,
    NotOrthonormal,
    NotTimelike,
    NotUnit,
    SingularProjection,
    UnsupportedSpec,
)
from src.core.expr.chart import Chart
from src.core.expr.matrix import expr_array, matmul, parse_array
from src.core.expr.nodes import Const, mul, total
from src.core.expr.parser import parse
from src.core.expr.zero import is_zero
from src.core.frames.frames import random_element
from src.core.frames.types import eta
from src.core.geometry.connections import levi_civita, weitzenbock
from src.core.geometry.fields import FrameField, MetricField, VolumeForm
from src.core.geometry.metric import conformal_rescale, orthonormal_frame, volume_form
from src.core.geometry.perturbations import preserving_dimension
from src.core.groups.groupfactory import GroupFactory
from src.core.groups.spec import parse_subgroup
from src.core.reductions.classifier import classify_connection
from src.core.reductions.dof import connection_dof, connection_ledger, dof_table, subgroup_dim
from src.core.reductions.specs import ReductionSpec, parse_reduction
from src.core.reductions.time_gauge import check_triad, frame_gram, parse_vector, time_gauge_split


def identity_frame(chart) -> FrameField:
    n = chart.dim
    return FrameField.parse(chart, [["1" if i == j else "0" for j in range(n)] for i in range(n)])


# =====================================================================
# reduction tags
# =====================================================================

def test_parse_reduction():
    assert parse_reduction("O(1,3)", 4) == ReductionSpec("O", 4, (1, 3))
    assert parse_reduction("U(1,3)", 4).tag == "Unimodular"
    assert parse_reduction("TG", 4).tag == "TimeGauge"
    assert parse_reduction("tp", 4).tag == "Teleparallel"
    assert parse_reduction("W", 4).label() == "Weyl[n=4]"


@pytest.mark.parametrize("tag, n", [("O(1,3)", 3), ("SL(4)", 4), ("TG(0,4)", 4), ("GL", 4), ("O", 1)])
def test_bad_reductions(tag, n):
    with pytest.raises(UnsupportedSpec):
        parse_reduction(tag, n)


# =====================================================================
# degree-of-freedom ledgers
# =====================================================================

@pytest.mark.parametrize(
    "tag, d, quotient",
    [("O(1,3)", 6, 10), ("SO(1,3)", 6, 10), ("W(1,3)", 7, 9), ("Id", 0, 16), ("SL", 15, 1)],
)
def test_dof_table_four_dimensions(tag, d, quotient):
    table = dof_table(parse_reduction(tag, 4))
    assert table.dim_G == 16
    assert table.dim_H == d
    assert table.dim_G_mod_H == quotient
    assert table.connection_space == 64
    assert table.preserving_space == 4 * d


def test_unimodular_is_two_stage():
    table = dof_table(parse_reduction("U(1,3)", 4))
    assert [s.dim_G_mod_H for s in table.stages] == [1, 9]
    assert [(s.parent, s.subgroup) for s in table.stages] == [("GL", "SL"), ("SL", "SO")]
    assert table.dim_G_mod_H == 10
    assert table.to_dict()["unimodular_metric_space"] == 9


def test_teleparallel_is_two_stage():
    table = dof_table(parse_reduction("TP(1,3)", 4))
    assert [s.dim_G_mod_H for s in table.stages] == [10, 6]
    assert table.dim_H == 0
    assert table.dim_G_mod_H == 16


def test_time_gauge_reduces_lorentz_group():
    table = dof_table(parse_reduction("TG", 4))
    assert (table.dim_G, table.dim_H, table.dim_G_mod_H) == (6, 3, 3)


@pytest.mark.parametrize(
    "tag, expected",
    [
        ("O(1,3)", {"all": 64, "symmetric": 40, "preserving": 24, "symmetric_preserving": 0}),
        ("W(1,3)", {"all": 64, "symmetric": 40, "preserving": 28, "symmetric_preserving": 4}),
        ("SL", {"all": 64, "symmetric": 40, "preserving": 60, "symmetric_preserving": 36}),
        ("Id", {"all": 64, "symmetric": 40, "preserving": 0, "symmetric_preserving": 0}),
    ],
)
def test_connection_ledger_four_dimensions(tag, expected):
    assert connection_ledger(parse_reduction(tag, 4)) == expected


def test_unknown_connection_kind():
    with pytest.raises(UnsupportedSpec):
        connection_dof(parse_reduction("O(1,3)", 4), "torsion")


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("tag", ["O", "SO", "Weyl", "SL", "Identity", "Unimodular", "Teleparallel"])
def test_ledger_identities(tag, n):
    table = dof_table(ReductionSpec(tag, n))
    assert table.dim_H + table.dim_G_mod_H == table.dim_G == n * n
    assert table.preserving_space == n * subgroup_dim(table.spec)
    assert connection_dof(table.spec, "symmetric") + n * n * (n - 1) // 2 == n ** 3
    for stage in table.stages:
        assert stage.dim_H + stage.dim_G_mod_H == stage.dim_G
    if table.stages:
        assert sum(s.dim_G_mod_H for s in table.stages) == table.dim_G_mod_H


# closed-form counts against the numeric rank of the linear constraints
_RANK_KINDS = {"O": ("metric", "symmetric_metric"), "Weyl": ("weyl", "symmetric_weyl"),
               "SL": ("volume", "symmetric_volume")}


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("tag", sorted(_RANK_KINDS))
def test_ledger_matches_constraint_rank(tag, n):
    spec = ReductionSpec(tag, n)
    g = eta(1, n - 1)
    kind, symmetric_kind = _RANK_KINDS[tag]
    assert preserving_dimension(kind, n, g=g) == connection_dof(spec, "preserving")
    assert preserving_dimension(symmetric_kind, n, g=g) == connection_dof(spec, "symmetric_preserving")
    assert preserving_dimension("frame", n, e=np.eye(n)) == connection_dof(ReductionSpec("Identity", n), "preserving")


# =====================================================================
# classification
# =====================================================================

def test_levi_civita_of_sphere_is_classified(sphere):
    c = levi_civita(sphere)
    report = classify_connection(c, g=sphere, vol=volume_form(sphere))
    assert report["symmetric"]
    assert report["metric"]
    assert report["weyl"]
    assert report["volume_preserving"]
    assert not report["flat"]
    assert report.get("frame_preserving") is None
    assert report.weyl_closed.value
    assert set(report.preserved_structures) == {"orthogonal", "conformal", "special_linear", "unimodular"}


def test_weitzenbock_is_classified(polar_frame, polar_metric):
    c = weitzenbock(polar_frame)
    report = classify_connection(c, g=polar_metric, f=polar_frame)
    assert not report["symmetric"]
    assert report["metric"]
    assert report["weyl"]
    assert report["frame_preserving"]
    assert report["flat"]
    assert all(is_zero(a, polar_metric.chart) for a in report.weyl_form.components)
    assert "teleparallel" in report.preserved_structures


def test_rescaled_levi_civita_is_weyl_only(minkowski, minkowski_chart):
    c = levi_civita(conformal_rescale(minkowski, parse("exp(x^2*y)", minkowski_chart)))
    report = classify_connection(c, g=minkowski, flags=["metric", "weyl"])
    assert not report["metric"]
    assert report["weyl"]
    assert report.weyl_closed.value
    assert report.preserved_structures == ("conformal",)
    assert set(report.to_dict()) == {"metric", "weyl", "weyl_closed", "preserved_structures"}


def test_polar_levi_civita_preserves_polar_volume(polar_metric, polar_chart):
    c = levi_civita(polar_metric)
    report = classify_connection(c, vol=VolumeForm.parse(polar_chart, "r"), flags=["volume_preserving"])
    assert report["volume_preserving"]
    other = classify_connection(c, vol=VolumeForm.parse(polar_chart, "r^2"), flags=["volume_preserving"])
    assert not other["volume_preserving"]


def test_classification_needs_context(sphere):
    c = levi_civita(sphere)
    with pytest.raises(MissingContext):
        classify_connection(c)
    with pytest.raises(MissingContext):
        classify_connection(c, flags=["frame_preserving"], g=sphere)
    with pytest.raises(ValueError):
        classify_connection(c, g=sphere, flags=["shiny"])


# =====================================================================
# time gauge
# =====================================================================

def test_rest_frame_time_gauge(minkowski, minkowski_chart):
    split = time_gauge_split(identity_frame(minkowski_chart), minkowski, ["1", "0", "0", "0"])
    assert split.passed
    for k, leg in enumerate(split.triad):
        for mu in range(4):
            assert is_zero(leg[mu] - int(mu == k + 1), minkowski_chart)


def test_boosted_time_gauge(minkowski, minkowski_chart):
    u = ["5/4", "3/4", "0", "0"]
    split = time_gauge_split(identity_frame(minkowski_chart), minkowski, u)
    assert split.passed
    e = split.at(np.zeros(4) + [0.0, 0.5, 0.5, 0.0])
    np.testing.assert_allclose(e[:, 0], [1.25, 0.75, 0, 0])
    np.testing.assert_allclose(e[:, 1], [0.75, 1.25, 0, 0])
    np.testing.assert_allclose(e.T @ eta(1, 3) @ e, eta(1, 3), atol=1e-12)
    tetrad = split.tetrad()
    assert tetrad.n == 4


def test_rotated_triad_is_still_valid(minkowski, minkowski_chart):
    u = parse_vector(minkowski_chart, ["5/4", "3/4", "0", "0"])
    split = time_gauge_split(identity_frame(minkowski_chart), minkowski, u)
    rotated = [
        split.triad[0],
        parse_vector(minkowski_chart, ["0", "0", "cos(x)", "sin(x)"]),
        parse_vector(minkowski_chart, ["0", "0", "-sin(x)", "cos(x)"]),
    ]
    orthonormal, orthogonal = check_triad(minkowski, u, rotated)
    assert orthonormal.passed and orthogonal.passed
    skewed = [split.triad[0], split.triad[1], tuple(a + b for a, b in zip(split.triad[1], split.triad[2]))]
    orthonormal, _ = check_triad(minkowski, u, skewed)
    assert not orthonormal.passed


def test_time_gauge_rejections(minkowski, minkowski_chart, sphere, sphere_chart):
    f = identity_frame(minkowski_chart)
    with pytest.raises(NotTimelike):
        time_gauge_split(f, minkowski, ["0", "1", "0", "0"])
    with pytest.raises(NotTimelike):
        time_gauge_split(f, minkowski, ["1", "1", "0", "0"])
    with pytest.raises(NotUnit):
        time_gauge_split(f, minkowski, ["2", "0", "0", "0"])
    with pytest.raises(UnsupportedSpec):
        time_gauge_split(identity_frame(sphere_chart), sphere, ["1", "0"])


def test_frame_leg_along_u_cannot_be_projected(minkowski, minkowski_chart):
    swapped = FrameField.parse(
        minkowski_chart,
        [["0", "1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    )
    with pytest.raises(SingularProjection):
        time_gauge_split(swapped, minkowski, [Const(1), "0", "0", "0"])


@pytest.mark.parametrize("seed", range(8))
def test_random_rotation_of_triad_is_still_valid(seed, minkowski, minkowski_chart):
    u = parse_vector(minkowski_chart, ["5/4", "3/4", "0", "0"])
    split = time_gauge_split(identity_frame(minkowski_chart), minkowski, u)
    h = random_element(parse_subgroup("SO(3)"), 3, np.random.default_rng(seed))
    assert GroupFactory(parse_subgroup("SO(3)"), 3).contains(h)
    # h between two coordinate-dependent rotations, so every leg varies over the box
    about_z = parse_array(
        [["cos(x*y)", "-sin(x*y)", "0"], ["sin(x*y)", "cos(x*y)", "0"], ["0", "0", "1"]], minkowski_chart, (3, 3)
    )
    about_x = parse_array(
        [["1", "0", "0"], ["0", "cos(z)", "-sin(z)"], ["0", "sin(z)", "cos(z)"]], minkowski_chart, (3, 3)
    )
    local = matmul(matmul(about_z, expr_array(h.tolist())), about_x)
    rotated = [
        tuple(total(mul(local[i, j], split.triad[i][mu]) for i in range(3)) for mu in range(4))
        for j in range(3)
    ]
    orthonormal, orthogonal = check_triad(minkowski, u, rotated)
    assert orthonormal.passed and orthogonal.passed


def test_frame_must_be_orthonormal(minkowski, minkowski_chart):
    stretched = FrameField.parse(
        minkowski_chart,
        [["1", "0", "0", "0"], ["0", "2", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    )
    with pytest.raises(NotOrthonormal):
        time_gauge_split(stretched, minkowski, ["1", "0", "0", "0"])
    assert issubclass(NotOrthonormal, GeometryError)
    assert all(is_zero(e, minkowski_chart) for e in frame_gram(minkowski, identity_frame(minkowski_chart)))


def test_time_gauge_on_a_curved_diagonal_metric():
    chart = Chart(("t", "x", "y", "z"), ((-1.0, 1.0), (0.1, 1.0), (0.1, 1.0), (0.1, 1.0)))
    g = MetricField.parse(
        chart,
        [["x^2 + 1", "0", "0", "0"], ["0", "-(1 + y^2)", "0", "0"], ["0", "0", "exp(z)", "0"], ["0", "0", "0", "1"]],
        (1, 3),
    )
    f = orthonormal_frame(g)
    assert all(is_zero(e, chart) for e in frame_gram(g, f))
    # x is the timelike coordinate, and its leg comes first
    assert is_zero(f.e[1, 0] - 1 / parse("sqrt(1 + y^2)", chart), chart)
    split = time_gauge_split(f, g, ["0", "1/sqrt(1 + y^2)", "0", "0"])
    assert split.passed
