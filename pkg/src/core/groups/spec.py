# groups/spec.py
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from src.core.config import get_settings
from src.core.errors import UnsupportedSpec

TAGS = ("O", "SO", "Weyl", "SL", "Identity")

_ALIASES = {
    "O": "O",
    "SO": "SO",
    "W": "Weyl",
    "WEYL": "Weyl",
    "SL": "SL",
    "ID": "Identity",
    "I": "Identity",
    "IDENTITY": "Identity",
}

_TAG_RE = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$")


@dataclass(frozen=True)
class SubgroupSpec:
    tag: str
    signature: Optional[tuple[int, int]] = None
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.tag not in TAGS:
            raise UnsupportedSpec(f"unknown subgroup tag `{self.tag}`")
        if self.signature is not None:
            p, q = self.signature
            if p < 0 or q < 0 or p + q == 0:
                raise UnsupportedSpec(f"invalid signature {self.signature}")
            object.__setattr__(self, "signature", (int(p), int(q)))

    def with_dim(self, n: int) -> "SubgroupSpec":
        """Fill in a Euclidean signature when none was given and check p + q = n."""
        if self.signature is None:
            if self.tag in ("O", "SO", "Weyl"):
                return SubgroupSpec(self.tag, (0, n), self.tolerance)
            return self
        if sum(self.signature) != n:
            raise UnsupportedSpec(
                f"signature {self.signature} does not match dimension {n}"
            )
        return self

    def label(self) -> str:
        short = {"Weyl": "W", "Identity": "Id"}.get(self.tag, self.tag)
        if self.signature is None:
            return short
        p, q = self.signature
        return f"{short}({q})" if p == 0 and self.tag != "Weyl" else f"{short}({p},{q})"


def split_tag(text: str) -> tuple[str, Optional[tuple[int, int]]]:
    """`"O(1,3)"` -> ("O", (1, 3)); `"SO(3)"` -> ("SO", (0, 3)); `"SL"` -> ("SL", None)."""
    m = _TAG_RE.match(text)
    if m is None:
        raise UnsupportedSpec(f"cannot read group tag `{text}`")
    name, a, b = m.groups()
    if a is None:
        return name.upper(), None
    if b is None:
        return name.upper(), (0, int(a))
    return name.upper(), (int(a), int(b))


def parse_subgroup(text: str, tolerance: Optional[float] = None) -> SubgroupSpec:
    name, signature = split_tag(text)
    tag = _ALIASES.get(name)
    if tag is None:
        raise UnsupportedSpec(f"unknown subgroup tag `{text}`")
    if tag in ("SL", "Identity") and signature is not None:
        raise UnsupportedSpec(f"`{tag}` takes no signature")
    tol = get_settings().tol if tolerance is None else tolerance
    return SubgroupSpec(tag, signature, tol)
