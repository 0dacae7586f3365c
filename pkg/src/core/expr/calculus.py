# expr/calculus.py
from __future__ import annotations

from functools import lru_cache

from src.core.expr.nodes import (
    ONE,
    ZERO,
    BinOp,
    Const,
    Expr,
    Func,
    NamedConst,
    Var,
    add,
    cos,
    div,
    log,
    mul,
    neg,
    power,
    sin,
    sub,
)


@lru_cache(maxsize=65536)
def differentiate(e: Expr, v: str) -> Expr:
    """Partial derivative of `e` with respect to coordinate `v`."""
    if isinstance(e, (Const, NamedConst)):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == v else ZERO
    if isinstance(e, Func):
        du = differentiate(e.arg, v)
        if du == ZERO:
            return ZERO
        return mul(_outer(e.name, e.arg), du) if e.name != "neg" else neg(du)
    if isinstance(e, BinOp):
        return _binop(e, v)
    raise TypeError(f"unknown node {e!r}")


def _outer(name: str, u: Expr) -> Expr:
    # derivative of the outer function, evaluated at u
    if name == "sin":
        return cos(u)
    if name == "cos":
        return neg(sin(u))
    if name == "tan":
        return div(ONE, power(cos(u), Const(2)))
    if name == "exp":
        return Func("exp", u)
    if name == "log":
        return div(ONE, u)
    if name == "sqrt":
        return div(ONE, mul(Const(2), Func("sqrt", u)))
    raise ValueError(f"no derivative rule for {name}")


def _binop(e: BinOp, v: str) -> Expr:
    a, b = e.left, e.right
    da, db = differentiate(a, v), differentiate(b, v)
    if e.op == "+":
        return add(da, db)
    if e.op == "-":
        return sub(da, db)
    if e.op == "*":
        return add(mul(da, b), mul(a, db))
    if e.op == "/":
        # (a'b - ab') / b^2
        return div(sub(mul(da, b), mul(a, db)), power(b, Const(2)))
    # pow
    if db == ZERO:
        if da == ZERO:
            return ZERO
        return mul(mul(b, power(a, sub(b, ONE))), da)
    if da == ZERO:
        return mul(mul(e, log(a)), db)
    # a^b (b' log a + b a'/a)
    return mul(e, add(mul(db, log(a)), div(mul(b, da), a)))
