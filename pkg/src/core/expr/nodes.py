# expr/nodes.py
"""
Expression tree for scalar functions of chart coordinates.

Nodes are immutable and hashable. Two families of constructors exist:

- the raw node classes (`Const`, `Var`, `NamedConst`, `Func`, `BinOp`), used by the
  parser so that the tree mirrors the source text;
- the smart constructors (`add`, `sub`, `mul`, `div`, `power`, `neg`, `func`), used by
  every computation. They apply the conservative simplifications only: constant
  folding, +-0, *1, *0, double negation and integer pow collapse.

`sub(a, a)` folds to 0 and `div(a, a)` to 1 whatever `a` is, so a pole or a
branch cut of `a` no longer raises DomainError once the tree has cancelled it.

Operator overloading on `Expr` goes through the smart constructors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "neg")
CONSTANTS = {"pi": math.pi, "e": math.e}
BINARY_OPS = ("+", "-", "*", "/", "^")

Number = Union[int, float, Fraction]


class Expr:
    """Base class of all expression nodes."""

    __slots__ = ()

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return to_source(self)

    # arithmetic builds simplified trees
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __pow__(self, other):
        return power(self, as_expr(other))

    def __rpow__(self, other):
        return power(as_expr(other), self)

    def __neg__(self):
        return neg(self)


@dataclass(frozen=True, repr=False)
class Const(Expr):
    value: Fraction
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "_hash", hash(("const", self.value)))

    __hash__ = Expr.__hash__

    def __repr__(self) -> str:
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    name: str
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("var", self.name)))

    __hash__ = Expr.__hash__

    def __repr__(self) -> str:
        return f"Var({self.name})"


@dataclass(frozen=True, repr=False)
class NamedConst(Expr):
    name: str
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.name not in CONSTANTS:
            raise ValueError(f"not a named constant: {self.name}")
        object.__setattr__(self, "_hash", hash(("named", self.name)))

    __hash__ = Expr.__hash__

    def __repr__(self) -> str:
        return f"NamedConst({self.name})"


@dataclass(frozen=True, repr=False)
class Func(Expr):
    name: str
    arg: Expr
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"not a supported function: {self.name}")
        object.__setattr__(self, "_hash", hash(("func", self.name, self.arg)))

    __hash__ = Expr.__hash__

    def __repr__(self) -> str:
        return f"Func({self.name}, {self.arg!r})"


@dataclass(frozen=True, repr=False)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"not a binary operator: {self.op}")
        object.__setattr__(self, "_hash", hash(("bin", self.op, self.left, self.right)))

    __hash__ = Expr.__hash__

    def __repr__(self) -> str:
        return f"BinOp({self.op!r}, {self.left!r}, {self.right!r})"


ZERO = Const(0)
ONE = Const(1)


def as_expr(value: Union[Expr, Number]) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not expressions")
    if isinstance(value, (int, Fraction)):
        return Const(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite literal: {value}")
        # shortest repr keeps 0.1 as 1/10
        return Const(Fraction(repr(value)))
    raise TypeError(f"cannot build an expression from {type(value).__name__}")


def is_const(e: Expr, value: Number | None = None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


# -------------------------------------------------------------------
# Smart constructors
# -------------------------------------------------------------------

def add(a: Expr, b: Expr) -> Expr:
    if is_const(a, 0):
        return b
    if is_const(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return BinOp("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if is_const(b, 0):
        return a
    if is_const(a, 0):
        return neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if a == b:
        return ZERO
    return BinOp("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if is_const(a, 0) or is_const(b, 0):
        return ZERO
    if is_const(a, 1):
        return b
    if is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if is_const(a, -1):
        return neg(b)
    if is_const(b, -1):
        return neg(a)
    return BinOp("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if is_const(b, 1):
        return a
    if isinstance(b, Const) and b.value == 0:
        # kept so evaluation reports the pole
        return BinOp("/", a, b)
    if is_const(a, 0):
        return ZERO
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if a == b:
        return ONE
    if isinstance(b, BinOp) and b.op == "/" and is_const(b.left, 1):
        return mul(a, b.right)
    return BinOp("/", a, b)


FOLD_BITS = 4096


def _folds_exactly(base: Fraction, k: int) -> bool:
    """Integer powers of more than FOLD_BITS bits stay symbolic."""
    bits = max(base.numerator.bit_length(), base.denominator.bit_length())
    return bits * abs(k) <= FOLD_BITS


def power(a: Expr, b: Expr) -> Expr:
    if is_const(b, 0):
        return ONE
    if is_const(b, 1):
        return a
    if is_const(a, 1):
        return ONE
    if isinstance(a, Const) and isinstance(b, Const) and b.value.denominator == 1:
        if (a.value != 0 or b.value > 0) and _folds_exactly(a.value, int(b.value)):
            return Const(a.value ** int(b.value))
    if (isinstance(a, BinOp) and a.op == "^" and isinstance(a.right, Const)
            and a.right.value.denominator == 1 and isinstance(b, Const)
            and b.value.denominator == 1):
        return power(a.left, Const(a.right.value * b.value))
    return BinOp("^", a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Func) and a.name == "neg":
        return a.arg
    return Func("neg", a)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def func(name: str, arg: Expr) -> Expr:
    if name == "neg":
        return neg(arg)
    if isinstance(arg, Const):
        if arg.value == 0 and name in ("sin", "tan", "sqrt"):
            return ZERO
        if arg.value == 0 and name in ("cos", "exp"):
            return ONE
        if arg.value == 1 and name == "log":
            return ZERO
        if name == "sqrt":
            root = _exact_sqrt(arg.value)
            if root is not None:
                return Const(root)
    return Func(name, arg)


def sin(arg: Expr) -> Expr:
    return func("sin", as_expr(arg))


def cos(arg: Expr) -> Expr:
    return func("cos", as_expr(arg))


def tan(arg: Expr) -> Expr:
    return func("tan", as_expr(arg))


def exp(arg: Expr) -> Expr:
    return func("exp", as_expr(arg))


def log(arg: Expr) -> Expr:
    return func("log", as_expr(arg))


def sqrt(arg: Expr) -> Expr:
    return func("sqrt", as_expr(arg))


def total(terms) -> Expr:
    """Sum of an iterable of expressions, skipping structural zeros."""
    out = ZERO
    for t in terms:
        out = add(out, t)
    return out


# -------------------------------------------------------------------
# Literal folding (parser side)
# -------------------------------------------------------------------

def fold_literal_neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    return Func("neg", a)


def fold_literal_div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    return BinOp("/", a, b)


# -------------------------------------------------------------------
# Printer
# -------------------------------------------------------------------

def to_source(e: Expr) -> str:
    """
    Print in the manifest grammar. Binary nodes are fully parenthesized and
    non-integer or negative literals print as `(p/q)` / `(-p)`, so that
    parsing the output rebuilds the same tree.
    """
    if isinstance(e, Const):
        v = e.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        if v.denominator == 1:
            return f"({v.numerator})"
        return f"({v.numerator}/{v.denominator})"
    if isinstance(e, (Var, NamedConst)):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({to_source(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    raise TypeError(f"unknown node {e!r}")
