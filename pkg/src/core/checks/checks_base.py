# checks_base.py
"""
Check Registry
--------------

A check is a function whose parameters name the scene objects it works on
(`metric`, `f`, `c`, `u`, ...). Registering it with `@check` records which of
those are required, so the analyzer can tell whether a check applies to a scene
without calling it.

A check returns a CheckOutcome: named residuals plus any numeric values it
extracted along the way.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, TypedDict

from src.core.geometry.residuals import Residual


# -------------------------------------------------------------------
# 1. CHECK DEFINITION TYPES
# -------------------------------------------------------------------

class CheckDefinition(TypedDict):
    name: str
    description: str
    requires: List[str]
    optional: List[str]
    counted: bool


@dataclass(frozen=True)
class CheckOutcome:
    residuals: Tuple[Residual, ...]
    extracted: Dict[str, Any] = field(default_factory=dict)


# -------------------------------------------------------------------
# 2. PUBLIC API FOR REGISTERING CHECKS
# -------------------------------------------------------------------

REGISTERED_CHECKS: Dict[str, Callable[..., CheckOutcome]] = {}


def check(fn: Optional[Callable] = None, *, counted: bool = True) -> Callable:
    """
    Decorator that registers a function as a check.
    Diagnostic checks (`counted=False`) are reported but never fail a run.
    """

    def register(fn: Callable) -> Callable:
        REGISTERED_CHECKS[fn.__name__] = fn
        fn.__check_schema__ = build_check_schema(fn, counted)
        return fn

    if fn is None:
        return register
    return register(fn)


def build_check_schema(fn: Callable, counted: bool = True) -> CheckDefinition:
    sig = inspect.signature(fn)
    requires = []
    optional = []
    for name, param in sig.parameters.items():
        if param.default is inspect.Parameter.empty:
            requires.append(name)
        else:
            optional.append(name)
    doc = inspect.getdoc(fn)
    return {
        "name": fn.__name__,
        "description": doc.splitlines()[0] if doc else fn.__name__,
        "requires": requires,
        "optional": optional,
        "counted": counted,
    }


# -------------------------------------------------------------------
# 3. LOOKUP
# -------------------------------------------------------------------

def get_check(name: str) -> Callable[..., CheckOutcome]:
    fn = REGISTERED_CHECKS.get(name)
    if not fn:
        raise ValueError(f"Check `{name}` not registered")
    return fn


def applicable(fn: Callable, has: Callable[[str], bool]) -> bool:
    return all(has(name) for name in fn.__check_schema__["requires"])


def get_all_check_schemas() -> Dict[str, CheckDefinition]:
    return {name: fn.__check_schema__ for name, fn in sorted(REGISTERED_CHECKS.items())}
