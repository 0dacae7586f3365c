# frames/frames.py
"""
Point-level frame algebra: change of basis, subgroup membership, H-orbits and the
invariant object each reduction of GL defines.

Frames hold basis vectors as columns. A group element h acts by recombining them,
b -> b h, which is the action under which the induced inner product is constant
along O-orbits.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.core.config import get_settings
from src.core.errors import SingularFrame
from src.core.frames.types import (
    Frame,
    InnerProduct,
    OrbitInvariant,
    UnimodularInvariant,
    eta,
    signature_of,
)
from src.core.groups.groupfactory import GroupFactory
from src.core.groups.orthogonal import induced_matrix
from src.core.groups.spec import SubgroupSpec

logger = logging.getLogger(__name__)

# number of free parameters of each invariant, i.e. dim(GL/H)
INVARIANT_DIMENSIONS = {
    "inner_product": lambda n: n * (n + 1) // 2,
    "conformal_class": lambda n: n * (n + 1) // 2 - 1,
    "determinant_class": lambda n: 1,
    "frame": lambda n: n * n,
}


def change_of_basis(b1: Frame, b2: Frame) -> np.ndarray:
    """h with b2 = b1 h."""
    if b1.n != b2.n:
        raise ValueError(f"frames of different dimension: {b1.n} and {b2.n}")
    return np.linalg.solve(b1.matrix, b2.matrix)


def in_subgroup(h: np.ndarray, H: SubgroupSpec) -> bool:
    h = np.asarray(h, dtype=float)
    return GroupFactory(H, h.shape[0]).contains(h)


def same_orbit(b1: Frame, b2: Frame, H: SubgroupSpec) -> bool:
    return in_subgroup(change_of_basis(b1, b2), H)


def induced_inner_product(b: Frame, signature: tuple[int, int]) -> np.ndarray:
    p, q = signature
    if p + q != b.n:
        raise ValueError(f"signature {signature} does not match dimension {b.n}")
    return induced_matrix(b.matrix, eta(p, q))


def orbit_invariant(b: Frame, H: SubgroupSpec) -> OrbitInvariant:
    return GroupFactory(H, b.n).invariant(b)


def unimodular_inner_product(
    b: Frame, signature: tuple[int, int], tol: Optional[float] = None
) -> UnimodularInvariant:
    """
    Double reduction GL -> SL -> SO at a point. A frame of determinant A induces an
    inner product with det P = eps / A^2, eps = (-1)^p.
    """
    tol = get_settings().tol if tol is None else tol
    p, _ = signature
    a = b.det
    pm = induced_inner_product(b, signature)
    epsilon = -1 if p % 2 else 1
    residual = abs(np.linalg.det(pm) * a * a - epsilon)
    if residual > tol * max(1.0, float(np.max(np.abs(pm))) ** b.n):
        raise SingularFrame(f"det P * A^2 = {np.linalg.det(pm) * a * a}, expected {epsilon}")
    logger.debug("unimodular pair A=%g eps=%d residual=%.3e", a, epsilon, residual)
    return UnimodularInvariant(a, InnerProduct(pm, signature_of(pm)), epsilon)


def random_element(H: SubgroupSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    return GroupFactory(H, n).random_element(n, rng)


def random_frame(n: int, rng: np.random.Generator) -> Frame:
    """Well-conditioned random frame near the standard basis."""
    for _ in range(100):
        m = np.eye(n) + rng.normal(scale=0.3, size=(n, n))
        if np.linalg.cond(m) < 20:
            return Frame(m)
    raise SingularFrame("could not draw a well-conditioned frame")
