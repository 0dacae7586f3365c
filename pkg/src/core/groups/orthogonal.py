# groups/orthogonal.py
from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from src.core.errors import SingularFrame
from src.core.frames.types import ConformalClass, Frame, InnerProduct, signature_of
from src.core.groups.subgroup import Subgroup


def induced_matrix(b: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """P = b^-T eta b^-1, the inner product for which the columns of b are orthonormal."""
    try:
        inv = np.linalg.inv(b)
    except np.linalg.LinAlgError as exc:
        raise SingularFrame(str(exc)) from exc
    p = inv.T @ eta @ inv
    return (p + p.T) / 2.0


def _scale(*arrays: np.ndarray) -> float:
    return max([1.0] + [float(np.max(np.abs(a))) for a in arrays])


def random_lie_orthogonal(eta: np.ndarray, rng: np.random.Generator, spread: float = 0.5) -> np.ndarray:
    """exp(eta A) with A antisymmetric lies in the identity component of O(eta)."""
    n = eta.shape[0]
    a = rng.normal(scale=spread, size=(n, n))
    return expm(eta @ (a - a.T) / 2.0)


class OrthogonalGroup(Subgroup):
    """O(p,q), and SO(p,q) when `special` is set."""

    special = False

    def contains(self, h: np.ndarray) -> bool:
        h = self.check_invertible(h)
        m = h.T @ self.eta @ h
        if np.max(np.abs(m - self.eta)) > self.tol * _scale(m):
            return False
        if self.special:
            return bool(np.linalg.det(h) > 0)
        return True

    def invariant(self, b: Frame) -> InnerProduct:
        p = induced_matrix(b.matrix, self.eta)
        return InnerProduct(p, signature_of(p))

    def random_element(self, n: int, rng: np.random.Generator) -> np.ndarray:
        h = random_lie_orthogonal(self.eta, rng)
        if not self.special and rng.random() < 0.5:
            # a reflection of one leg leaves eta unchanged
            r = np.eye(n)
            r[rng.integers(n), :] *= -1.0
            h = h @ r
        return h

    def dim(self, n: int) -> int:
        return n * (n - 1) // 2


class SpecialOrthogonalGroup(OrthogonalGroup):
    special = True


class WeylGroup(Subgroup):
    """R+ x O(p,q): dilatations combined with orthogonal transformations."""

    def contains(self, h: np.ndarray) -> bool:
        h = self.check_invertible(h)
        m = h.T @ self.eta @ h
        n = h.shape[0]
        c2 = float(np.trace(self.eta @ m)) / n
        if c2 <= 0:
            return False
        return bool(np.max(np.abs(m - c2 * self.eta)) <= self.tol * _scale(m))

    def invariant(self, b: Frame) -> ConformalClass:
        p = induced_matrix(b.matrix, self.eta)
        n = p.shape[0]
        rep = p / abs(np.linalg.det(p)) ** (1.0 / n)
        return ConformalClass(rep, signature_of(rep))

    def random_element(self, n: int, rng: np.random.Generator) -> np.ndarray:
        c = float(np.exp(rng.uniform(-1.0, 1.0)))
        return c * random_lie_orthogonal(self.eta, rng)

    def dim(self, n: int) -> int:
        return n * (n - 1) // 2 + 1
