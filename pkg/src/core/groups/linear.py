# groups/linear.py
from __future__ import annotations

import numpy as np

from src.core.frames.types import DeterminantClass, Frame, TheFrameItself
from src.core.groups.subgroup import Subgroup


class SpecialLinearGroup(Subgroup):
    """SL(n): frames sharing the same determinant."""

    def contains(self, h: np.ndarray) -> bool:
        h = self.check_invertible(h)
        return bool(abs(np.linalg.det(h) - 1.0) <= self.tol)

    def invariant(self, b: Frame) -> DeterminantClass:
        return DeterminantClass(b.det)

    def random_element(self, n: int, rng: np.random.Generator) -> np.ndarray:
        h = np.eye(n) + rng.normal(scale=0.5, size=(n, n))
        d = np.linalg.det(h)
        if d < 0:
            h[:, 0] *= -1.0
            d = -d
        return h / d ** (1.0 / n)

    def dim(self, n: int) -> int:
        return n * n - 1


class IdentityGroup(Subgroup):
    """The trivial subgroup: the reduction selects one frame."""

    def contains(self, h: np.ndarray) -> bool:
        h = self.check_invertible(h)
        return bool(np.max(np.abs(h - np.eye(h.shape[0]))) <= self.tol)

    def invariant(self, b: Frame) -> TheFrameItself:
        return TheFrameItself(b)

    def random_element(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return np.eye(n)

    def dim(self, n: int) -> int:
        return 0
