# expr/parser.py
"""
Pratt parser for the manifest expression grammar.

    expr    := expr ('+' | '-') expr | expr ('*' | '/') expr | expr '^' expr
             | ('-' | '+') expr | atom
    atom    := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

`^` is right associative and binds tighter than unary minus, so `-x^2` is `-(x^2)`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from src.core.errors import ExprSyntaxError, UnknownSymbol
from src.core.expr.chart import Chart
from src.core.expr.nodes import (
    CONSTANTS,
    FUNCTIONS,
    BinOp,
    Const,
    Expr,
    Func,
    NamedConst,
    Var,
    fold_literal_div,
    fold_literal_neg,
)


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)

# left binding powers
INFIX_BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
PREFIX_BP = 30


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(source):
        m = TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos, source)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class Parser:
    def __init__(self, source: str, symbols: Iterable[str]):
        self.source = source
        self.symbols = frozenset(symbols)
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.token
        if tok.kind != kind:
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ExprSyntaxError(f"expected {what}, found {found}", tok.pos, self.source)
        return self.advance()

    def parse(self) -> Expr:
        result = self.expression(0)
        tok = self.token
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.pos, self.source)
        return result

    def expression(self, rbp: int) -> Expr:
        left = self.prefix()
        while True:
            tok = self.token
            if tok.kind != "op" or INFIX_BP[tok.text] <= rbp:
                return left
            self.advance()
            bp = INFIX_BP[tok.text]
            # right associative pow: parse the rhs one notch lower
            right = self.expression(bp - 1 if tok.text == "^" else bp)
            if tok.text == "/":
                left = fold_literal_div(left, right)
            else:
                left = BinOp(tok.text, left, right)

    def prefix(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Const(Fraction(tok.text))
        if tok.kind == "op" and tok.text == "-":
            return fold_literal_neg(self.expression(PREFIX_BP))
        if tok.kind == "op" and tok.text == "+":
            return self.expression(PREFIX_BP)
        if tok.kind == "lparen":
            inner = self.expression(0)
            self.expect("rparen", "')'")
            return inner
        if tok.kind == "name":
            return self.name(tok)
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"expected an operand, found {found}", tok.pos, self.source)

    def name(self, tok: Token) -> Expr:
        if self.token.kind == "lparen":
            if tok.text not in FUNCTIONS:
                raise UnknownSymbol(tok.text)
            self.advance()
            arg = self.expression(0)
            self.expect("rparen", "')'")
            if tok.text == "neg":
                return fold_literal_neg(arg)
            return Func(tok.text, arg)
        if tok.text in CONSTANTS:
            return NamedConst(tok.text)
        if tok.text in self.symbols:
            return Var(tok.text)
        raise UnknownSymbol(tok.text)


def parse(source: str, chart: Optional[Chart] = None) -> Expr:
    """
    Parse `source` into an expression over the coordinates of `chart`.
    Without a chart every identifier that is not a constant or function is rejected.
    """
    symbols = chart.coords if chart is not None else ()
    return Parser(source, symbols).parse()
