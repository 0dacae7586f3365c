# groups/subgroup.py
from __future__ import annotations

import numpy as np

from src.core.errors import SingularMatrix
from src.core.frames.types import Frame, OrbitInvariant, eta
from src.core.groups.spec import SubgroupSpec


class Subgroup:
    """
    Standard interface for a subgroup H of GL(n) acting on frames by b -> b h.

    Methods:
        contains(h) -> bool                        # membership within tolerance
        invariant(b) -> OrbitInvariant             # what every frame of [b] shares
        random_element(n, rng) -> np.ndarray       # sampler used by the orbit suites
        dim(n) -> int                              # dim H
    """

    def __init__(self, spec: SubgroupSpec):
        self.spec = spec
        self.tol = spec.tolerance

    @property
    def eta(self) -> np.ndarray:
        p, q = self.spec.signature
        return eta(p, q)

    def check_invertible(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise SingularMatrix(f"expected a square matrix, got shape {h.shape}")
        if abs(np.linalg.det(h)) <= 1e-12:
            raise SingularMatrix("change of basis is not invertible")
        return h

    def contains(self, h: np.ndarray) -> bool:
        raise NotImplementedError("contains must be implemented by subgroup classes")

    def invariant(self, b: Frame) -> OrbitInvariant:
        raise NotImplementedError("invariant must be implemented by subgroup classes")

    def random_element(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError("random_element must be implemented by subgroup classes")

    def dim(self, n: int) -> int:
        raise NotImplementedError("dim must be implemented by subgroup classes")
