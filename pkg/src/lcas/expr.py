"""Expression grammar for bracket values, and its pretty-printer.

::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | ident | '(' expr ')' | '-' atom

Rationals are ``12`` or ``3/2`` (no spaces inside).  Juxtaposition is not
multiplication.  Identifiers are ``del``, ``lam`` or a generator name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import ONE, ZERO, Poly

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
RESERVED = ("del", "lam", "mu", "nu")
_VARS = ("del", "lam")


class ExprError(ValueError):
    """Syntax or semantic error, located by 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    line: int
    column: int


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Name(Node):
    ident: str


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # '+', '-', '*'
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Paren(Node):
    inner: Node


# -- lexer -----------------------------------------------------------------

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()])")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _lex(src: str) -> list[_Tok]:
    out = []
    pos = line_start = 0
    line = 1
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ExprError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                line_start = pos + text.rfind("\n") + 1
        else:
            out.append(_Tok(kind, text, line, col))
        pos = m.end()
    col = pos - line_start + 1
    out.append(_Tok("end", "", line, col))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = _lex(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what: str):
        t = self.peek()
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprError(f"expected {what}, found {found}", t.line, t.column)

    def expr(self) -> Node:
        node = self.term()
        while self.peek().text in ("+", "-"):
            t = self.take()
            node = BinOp(t.line, t.column, t.text, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().text == "*":
            t = self.take()
            node = BinOp(t.line, t.column, "*", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.peek().text == "^":
            t = self.take()
            e = self.peek()
            if e.kind != "num" or "/" in e.text:
                self.fail("a non-negative integer exponent")
            self.take()
            node = Pow(t.line, t.column, node, int(e.text))
        return node

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Num(t.line, t.column, Fraction(t.text))
        if t.kind == "ident":
            self.take()
            return Name(t.line, t.column, t.text)
        if t.text == "(":
            self.take()
            inner = self.expr()
            if self.peek().text != ")":
                self.fail("')'")
            self.take()
            return Paren(t.line, t.column, inner)
        if t.text == "-":
            self.take()
            return Neg(t.line, t.column, self.atom())
        self.fail("a number, identifier, '(' or '-'")


def parse_expr(src: str) -> Node:
    """Parse text into an AST; raises :class:`ExprError` with its location."""
    p = _Parser(src)
    node = p.expr()
    if p.peek().kind != "end":
        p.fail("an operator or end of input")
    return node


# -- evaluation --------------------------------------------------------------

# A linear form: generator name (or None for the scalar part) -> del/lam polynomial.
Form = dict


def _scalar(p: Poly) -> Form:
    return {None: p} if p else {}


def _has_gen(f: Form) -> bool:
    return any(k is not None for k in f)


def _add(a: Form, b: Form, sign: int = 1) -> Form:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, ZERO) + v * sign
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _eval(node: Node, generators: Sequence[str]) -> Form:
    if isinstance(node, Num):
        c = node.value
        return _scalar(Poly.const(c.numerator if c.denominator == 1 else c))
    if isinstance(node, Name):
        if node.ident in _VARS:
            return _scalar(Poly.var(node.ident))
        if node.ident in generators:
            return {node.ident: ONE}
        raise ExprError(f"unknown identifier {node.ident!r}", node.line, node.column)
    if isinstance(node, Paren):
        return _eval(node.inner, generators)
    if isinstance(node, Neg):
        return _add({}, _eval(node.operand, generators), -1)
    if isinstance(node, Pow):
        base = _eval(node.base, generators)
        if _has_gen(base):
            if node.exponent >= 2:
                raise ExprError("a generator cannot be raised to a power of 2 or more", node.line, node.column)
            return base if node.exponent == 1 else _scalar(ONE)
        return _scalar(base.get(None, ZERO) ** node.exponent)
    if isinstance(node, BinOp):
        a = _eval(node.left, generators)
        b = _eval(node.right, generators)
        if node.op == "+":
            return _add(a, b)
        if node.op == "-":
            return _add(a, b, -1)
        if _has_gen(a) and _has_gen(b):
            raise ExprError("two generators cannot be multiplied", node.line, node.column)
        if _has_gen(b):
            a, b = b, a
        s = b.get(None, ZERO)
        return {k: v * s for k, v in a.items() if v * s}
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_expr(node: Node | str, generators: Sequence[str]) -> tuple[Poly, ...]:
    """Coefficient vector (in ``generators`` order) of a generator-linear expression."""
    if isinstance(node, str):
        node = parse_expr(node)
    form = _eval(node, generators)
    if None in form:
        raise ExprError("every term must contain exactly one generator", node.line, node.column)
    return tuple(form.get(g, ZERO) for g in generators)


# -- printing ----------------------------------------------------------------


def poly_text(p: Poly) -> str:
    return p.to_text()


def term_text(p: Poly, generator: str) -> str:
    if p == ONE:
        return generator
    if len(p) == 1:
        return f"{p.to_text()}*{generator}"
    return f"({p.to_text()})*{generator}"


def vector_terms(vec: Iterable[Poly], names: Sequence[str]) -> list[str]:
    """One term text per generator with a nonzero coefficient."""
    return [term_text(p, g) for p, g in zip(vec, names) if p]


def vector_text(vec: Iterable[Poly], names: Sequence[str]) -> str:
    terms = vector_terms(vec, names)
    return " + ".join(terms) if terms else "0"
