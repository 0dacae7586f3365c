# reductions/specs.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from src.core.errors import UnsupportedSpec
from src.core.groups.spec import split_tag

REDUCTION_TAGS = ("O", "SO", "Weyl", "SL", "Identity", "Unimodular", "TimeGauge", "Teleparallel")

_ALIASES = {
    "O": "O",
    "SO": "SO",
    "W": "Weyl",
    "WEYL": "Weyl",
    "SL": "SL",
    "ID": "Identity",
    "I": "Identity",
    "IDENTITY": "Identity",
    "U": "Unimodular",
    "UNIMODULAR": "Unimodular",
    "TG": "TimeGauge",
    "TIMEGAUGE": "TimeGauge",
    "TP": "Teleparallel",
    "TELEPARALLEL": "Teleparallel",
}


@dataclass(frozen=True)
class ReductionSpec:
    """A reduction of the frame bundle of an n-dimensional manifold."""

    tag: str
    n: int
    signature: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.tag not in REDUCTION_TAGS:
            raise UnsupportedSpec(f"unknown reduction `{self.tag}`")
        if self.n < 2:
            raise UnsupportedSpec(f"dimension must be at least 2, got {self.n}")
        if self.signature is not None:
            p, q = self.signature
            if p < 0 or q < 0 or p + q != self.n:
                raise UnsupportedSpec(f"signature {self.signature} does not match n={self.n}")
        if self.tag in ("SL", "Identity") and self.signature is not None:
            raise UnsupportedSpec(f"`{self.tag}` takes no signature")
        if self.tag == "TimeGauge" and self.signature not in (None, (1, self.n - 1)):
            raise UnsupportedSpec("the time gauge needs a Lorentzian signature (1, n-1)")

    def label(self) -> str:
        if self.signature is None:
            return f"{self.tag}[n={self.n}]"
        p, q = self.signature
        return f"{self.tag}({p},{q})"


def parse_reduction(text: str, n: int) -> ReductionSpec:
    name, signature = split_tag(text)
    tag = _ALIASES.get(name)
    if tag is None:
        raise UnsupportedSpec(f"unknown reduction `{text}`")
    return ReductionSpec(tag, n, signature)
