# reductions/dof.py
"""
Degree-of-freedom ledgers of the reductions of GL(n) and of their connection spaces.
All counts are closed-form; `src.core.geometry.perturbations` cross-checks the
connection counts by numeric rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from src.core.errors import UnsupportedSpec
from src.core.reductions.specs import ReductionSpec

CONNECTION_KINDS = ("all", "preserving", "symmetric", "symmetric_preserving")


@dataclass(frozen=True)
class DofStage:
    """One step of a multi-stage reduction: parent group G -> subgroup H."""

    parent: str
    subgroup: str
    dim_G: int
    dim_H: int

    @property
    def dim_G_mod_H(self) -> int:
        return self.dim_G - self.dim_H

    def to_dict(self) -> dict:
        return {
            "parent": self.parent,
            "subgroup": self.subgroup,
            "dim_G": self.dim_G,
            "dim_H": self.dim_H,
            "dim_G_mod_H": self.dim_G_mod_H,
        }


@dataclass(frozen=True)
class DofReport:
    spec: ReductionSpec
    dim_G: int
    dim_H: int
    dim_G_mod_H: int
    connection_space: int
    preserving_space: int
    stages: tuple[DofStage, ...] = ()
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim_H + self.dim_G_mod_H != self.dim_G:
            raise ValueError("dim H + dim G/H must equal dim G")
        if self.preserving_space != self.spec.n * self.dim_H:
            raise ValueError("the preserving space must have dimension n * dim H")

    def to_dict(self) -> dict:
        return {
            "reduction": self.spec.label(),
            "n": self.spec.n,
            "dim_G": self.dim_G,
            "dim_H": self.dim_H,
            "dim_G_mod_H": self.dim_G_mod_H,
            "connection_space": self.connection_space,
            "preserving_space": self.preserving_space,
            "stages": [s.to_dict() for s in self.stages],
            "notes": self.notes,
            **self.extra,
        }


def orthogonal_dim(n: int) -> int:
    return n * (n - 1) // 2


def subgroup_dim(spec: ReductionSpec) -> int:
    """d = dim H."""
    n = spec.n
    if spec.tag in ("O", "SO", "Unimodular"):
        return orthogonal_dim(n)
    if spec.tag == "Weyl":
        return orthogonal_dim(n) + 1
    if spec.tag == "SL":
        return n * n - 1
    if spec.tag in ("Identity", "Teleparallel"):
        return 0
    if spec.tag == "TimeGauge":
        return orthogonal_dim(n - 1)
    raise UnsupportedSpec(f"no dimension formula for `{spec.tag}`")


def dof_table(spec: ReductionSpec) -> DofReport:
    n = spec.n
    d = subgroup_dim(spec)
    gl = n * n
    stages: tuple[DofStage, ...] = ()
    extra: dict = {}
    notes = ""
    dim_g = gl
    if spec.tag == "Unimodular":
        stages = (
            DofStage("GL", "SL", gl, n * n - 1),
            DofStage("SL", "SO", n * n - 1, orthogonal_dim(n)),
        )
        extra["unimodular_metric_space"] = n * (n + 1) // 2 - 1
        notes = "volume form first (1), then a metric with Vol_g = Vol"
    elif spec.tag == "Teleparallel":
        stages = (
            DofStage("GL", "O", gl, orthogonal_dim(n)),
            DofStage("O", "Id", orthogonal_dim(n), 0),
        )
        notes = "orthogonal reduction, then the AP-frame breaks the remaining symmetry"
    elif spec.tag == "TimeGauge":
        dim_g = orthogonal_dim(n)
        notes = "reduction of SO(1,n-1) to SO(n-1); quotient counted per fibre of the tetrad bundle"
    elif spec.tag == "Identity":
        notes = "one frame: all n^2 parameters fixed"
    elif spec.tag == "Weyl":
        notes = "one number less than for a metric"
    return DofReport(
        spec=spec,
        dim_G=dim_g,
        dim_H=d,
        dim_G_mod_H=dim_g - d,
        connection_space=n * gl,
        preserving_space=n * d,
        stages=stages,
        notes=notes,
        extra=extra,
    )


def torsion_dim(n: int) -> int:
    return n * n * (n - 1) // 2


def connection_dof(spec: ReductionSpec, kind: str) -> int:
    """
    all                   n^3
    preserving            n d
    symmetric             n * n(n+1)/2
    symmetric_preserving  n d - n^2(n-1)/2, floored at 0 (overdetermined otherwise)
    """
    n = spec.n
    if kind not in CONNECTION_KINDS:
        raise UnsupportedSpec(f"unknown connection kind `{kind}`")
    if kind == "all":
        return n ** 3
    if kind == "symmetric":
        return n * n * (n + 1) // 2
    d = subgroup_dim(spec)
    if kind == "preserving":
        return n * d
    return max(0, n * d - torsion_dim(n))


def connection_ledger(spec: ReductionSpec) -> dict[str, int]:
    return {kind: connection_dof(spec, kind) for kind in CONNECTION_KINDS}
