# expr/simplify.py
from __future__ import annotations

from functools import lru_cache

from src.core.expr.nodes import BinOp, Expr, Func, add, div, func, mul, power, sub

_BUILDERS = {"+": add, "-": sub, "*": mul, "/": div, "^": power}


@lru_cache(maxsize=65536)
def simplify(e: Expr) -> Expr:
    """
    Rebuild `e` bottom-up through the smart constructors. Conservative:
    no trigonometric rewriting, no expansion, no common-factor search.
    """
    if isinstance(e, Func):
        return func(e.name, simplify(e.arg))
    if isinstance(e, BinOp):
        return _BUILDERS[e.op](simplify(e.left), simplify(e.right))
    return e
