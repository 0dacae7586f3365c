# frames/types.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from src.core.config import get_settings
from src.core.errors import SingularFrame


def eta(p: int, q: int) -> np.ndarray:
    """Mostly-plus reference form: p entries -1 followed by q entries +1."""
    return np.diag([-1.0] * p + [1.0] * q)


def signature_of(m: np.ndarray, tol: float = 1e-12) -> tuple[int, int]:
    """(number of negative, number of positive) eigenvalues of a symmetric matrix."""
    w = np.linalg.eigvalsh((m + m.T) / 2.0)
    return int(np.sum(w < -tol)), int(np.sum(w > tol))


def _close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return bool(np.max(np.abs(a - b)) <= tol * scale)


@dataclass(frozen=True, eq=False)
class Frame:
    """A vector basis of R^n: columns are the basis vectors in the reference basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise SingularFrame(f"a frame must be a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise SingularFrame("frame entries must be finite")
        if abs(np.linalg.det(m)) <= get_settings().singular_tol:
            raise SingularFrame("frame vectors are linearly dependent")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def standard(cls, n: int) -> "Frame":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def vector(self, i: int) -> np.ndarray:
        return self.matrix[:, i]

    def acted_on(self, h: np.ndarray) -> "Frame":
        """The frame whose vectors are recombined by h: b -> b h."""
        return Frame(self.matrix @ np.asarray(h, dtype=float))


# -------------------------------------------------------------------
# Orbit invariants (the reduction objects of the GL quotients)
# -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InnerProduct:
    matrix: np.ndarray
    signature: tuple[int, int]

    kind = "inner_product"

    def matches(self, other: "OrbitInvariant", tol: float) -> bool:
        return isinstance(other, InnerProduct) and _close(self.matrix, other.matrix, tol)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": self.matrix.tolist(), "signature": list(self.signature)}


@dataclass(frozen=True, eq=False)
class ConformalClass:
    """Representative normalized to |det| = 1; the sign pattern is kept."""

    matrix: np.ndarray
    signature: tuple[int, int]

    kind = "conformal_class"

    def matches(self, other: "OrbitInvariant", tol: float) -> bool:
        return isinstance(other, ConformalClass) and _close(self.matrix, other.matrix, tol)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": self.matrix.tolist(), "signature": list(self.signature)}


@dataclass(frozen=True, eq=False)
class DeterminantClass:
    value: float

    kind = "determinant_class"

    def __post_init__(self):
        if self.value == 0:
            raise SingularFrame("determinant class of a singular frame")

    def matches(self, other: "OrbitInvariant", tol: float) -> bool:
        return (isinstance(other, DeterminantClass)
                and abs(self.value - other.value) <= tol * max(1.0, abs(self.value)))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True, eq=False)
class TheFrameItself:
    frame: Frame

    kind = "frame"

    def matches(self, other: "OrbitInvariant", tol: float) -> bool:
        return (isinstance(other, TheFrameItself)
                and _close(self.frame.matrix, other.frame.matrix, tol))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": self.frame.matrix.tolist()}


OrbitInvariant = Union[InnerProduct, ConformalClass, DeterminantClass, TheFrameItself]


@dataclass(frozen=True, eq=False)
class UnimodularInvariant:
    """Double reduction SL -> SO at a point: determinant class A and inner product P."""

    determinant: float
    inner_product: InnerProduct
    epsilon: int

    kind = "unimodular"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "determinant": self.determinant,
            "epsilon": self.epsilon,
            "inner_product": self.inner_product.to_dict(),
        }
