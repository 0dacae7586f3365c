# expr/chart.py
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from src.core.config import get_settings

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
RESERVED = frozenset(("pi", "e", "sin", "cos", "tan", "exp", "log", "sqrt", "neg"))


@dataclass(frozen=True)
class Chart:
    """
    One coordinate chart: ordered coordinate names and an open sampling box.
    The box is chosen by the user to stay clear of coordinate singularities.
    """

    coords: tuple[str, ...]
    domain: tuple[tuple[float, float], ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        domain = tuple((float(lo), float(hi)) for lo, hi in self.domain)
        if not coords:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"coordinates must be unique: {coords}")
        for name in coords:
            if not IDENTIFIER.match(name) or name in RESERVED:
                raise ValueError(f"invalid coordinate name `{name}`")
        if len(domain) != len(coords):
            raise ValueError("one domain interval per coordinate is required")
        for name, (lo, hi) in zip(coords, domain):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"empty or unbounded interval for `{name}`: ({lo}, {hi})")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "domain", domain)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, coord: str) -> int:
        return self.coords.index(coord)

    def sample(self, samples: int | None = None, seed: int | None = None) -> np.ndarray:
        """
        Deterministic quasi-random interior points, shape (samples, dim).
        """
        settings = get_settings()
        samples = settings.samples if samples is None else samples
        seed = settings.seed if seed is None else seed
        if samples < 1:
            raise ValueError("samples must be >= 1")
        engine = qmc.Halton(d=self.dim, scramble=True, seed=seed)
        unit = engine.random(samples)
        # keep strictly inside the open box
        unit = np.clip(unit, 1e-6, 1.0 - 1e-6)
        lo = np.array([lo for lo, _ in self.domain])
        hi = np.array([hi for _, hi in self.domain])
        return qmc.scale(unit, lo, hi)

    def point(self, values: Sequence[float]) -> dict[str, float]:
        return dict(zip(self.coords, (float(v) for v in values)))
