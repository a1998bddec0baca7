"""Recursive-descent parser for algebra expressions and scalar literals.

Algebra grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := 'x11' | 'x12' | 'x21' | 'x22' | 'z1' | 'z2' | 'detq' | 'perq'
            | 'detalpha' | 'q' | 'alpha' | integer | '(' expr ')'

Scalar grammar (for ``--alpha``), evaluated in Q(q)::

    sexpr  := sterm (('+' | '-') sterm)*
    sterm  := sunary (('*' | '/') sunary)*
    sunary := '-' sunary | spow
    spow   := satom ('^' '-'? uint)?
    satom  := 'q' | integer | '(' sexpr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import BoundError, ParseError
from .quantum_matrix_algebra import (
    NCPolynomial,
    generator,
    quantum_alpha_det,
    quantum_det,
    quantum_per,
    z1,
    z2,
)
from .scalar_field import AlphaPolynomial, Q, QRational

__all__ = [
    "Sym",
    "Int",
    "BinOp",
    "Pow",
    "Expr",
    "SYMBOLS",
    "parse",
    "render_expr",
    "evaluate",
    "parse_scalar",
    "DEFAULT_MAX_DEGREE",
    "DEFAULT_MAX_ALPHA_DEGREE",
]

SYMBOLS = ("x11", "x12", "x21", "x22", "z1", "z2", "detq", "perq", "detalpha", "q", "alpha")

DEFAULT_MAX_DEGREE = 64
DEFAULT_MAX_ALPHA_DEGREE = 64


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Sym, Int, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, value: str) -> bool:
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            raise ParseError(f"expected {value!r}, found {self.tok[1] or 'end of input'!r}", self.tok[2])

    def finish(self) -> None:
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])

    def uint(self) -> int:
        kind, value, pos = self.take()
        if kind != "int":
            raise ParseError("expected a nonnegative integer exponent", pos)
        return int(value)

    # algebra grammar
    def expr(self) -> Expr:
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.accept("^"):
            node = Pow(node, self.uint())
        return node

    def atom(self) -> Expr:
        kind, value, pos = self.take()
        if kind == "int":
            return Int(int(value))
        if kind == "name":
            if value not in SYMBOLS:
                raise ParseError(f"unknown symbol {value!r}", pos)
            return Sym(value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"expected an atom, found {value or 'end of input'!r}", pos)

    # scalar grammar
    def sexpr(self) -> QRational:
        val = self.sterm()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.take()[1]
            rhs = self.sterm()
            val = val + rhs if op == "+" else val - rhs
        return val

    def sterm(self) -> QRational:
        val = self.sunary()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op, pos = self.take()[1], self.tok[2]
            rhs = self.sunary()
            if op == "/" and not rhs:
                raise ParseError("division by zero", pos)
            val = val * rhs if op == "*" else val / rhs
        return val

    def sunary(self) -> QRational:
        if self.accept("-"):
            return -self.sunary()
        return self.spow()

    def spow(self) -> QRational:
        base = self.satom()
        if self.accept("^"):
            neg = self.accept("-")
            pos = self.tok[2]
            e = self.uint()
            if neg:
                if not base:
                    raise ParseError("zero to a negative power", pos)
                e = -e
            base = base**e
        return base

    def satom(self) -> QRational:
        kind, value, pos = self.take()
        if kind == "int":
            return Q(int(value))
        if kind == "name" and value == "q":
            return Q.q
        if kind == "op" and value == "(":
            val = self.sexpr()
            self.expect(")")
            return val
        raise ParseError(f"expected q, an integer or '(', found {value or 'end of input'!r}", pos)


def parse(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def parse_scalar(text: str) -> QRational:
    """Parse a scalar such as ``-1``, ``1/2`` or ``q^-2`` into Q(q)."""
    p = _Parser(text)
    val = p.sexpr()
    p.finish()
    return val


_PREC = {"+": 1, "-": 1, "*": 2}


def render_expr(node: Expr) -> str:
    """Render with the fewest parentheses that preserve the tree."""
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Pow):
        base = render_expr(node.base)
        if not isinstance(node.base, (Sym, Int)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    prec = _PREC[node.op]
    left = render_expr(node.left)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] < prec:
        left = f"({left})"
    right = render_expr(node.right)
    if isinstance(node.right, BinOp) and _PREC[node.right.op] <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def _symbol_value(name: str) -> NCPolynomial:
    if name in ("x11", "x12", "x21", "x22"):
        return generator(name)
    return {
        "z1": z1,
        "z2": z2,
        "detq": quantum_det,
        "perq": quantum_per,
        "detalpha": quantum_alpha_det,
        "q": lambda: NCPolynomial.scalar(Q.q),
        "alpha": lambda: NCPolynomial.scalar(AlphaPolynomial([0, 1])),
    }[name]()


def _guard(p: NCPolynomial, max_degree: int, max_alpha_degree: int) -> NCPolynomial:
    if p.degree() > max_degree:
        raise BoundError(f"NC degree {p.degree()} exceeds the bound {max_degree}")
    if p.alpha_degree() > max_alpha_degree:
        raise BoundError(f"alpha-degree {p.alpha_degree()} exceeds the bound {max_alpha_degree}")
    return p


def evaluate(
    node: Expr,
    *,
    max_degree: int = DEFAULT_MAX_DEGREE,
    max_alpha_degree: int = DEFAULT_MAX_ALPHA_DEGREE,
) -> NCPolynomial:
    """Evaluate an expression tree to a normal-ordered element of A_q(Mat_2)[alpha]."""

    def ev(n: Expr) -> NCPolynomial:
        if isinstance(n, Sym):
            return _symbol_value(n.name)
        if isinstance(n, Int):
            return NCPolynomial.scalar(n.value)
        if isinstance(n, Pow):
            base = ev(n.base)
            if base and base.degree() * n.exponent > max_degree:
                raise BoundError(f"NC degree {base.degree() * n.exponent} exceeds the bound {max_degree}")
            if base and base.alpha_degree() * n.exponent > max_alpha_degree:
                raise BoundError(f"alpha-degree would exceed the bound {max_alpha_degree}")
            return base**n.exponent
        left, right = ev(n.left), ev(n.right)
        if n.op == "+":
            return left + right
        if n.op == "-":
            return left - right
        if left and right:
            if left.degree() + right.degree() > max_degree:
                raise BoundError(f"NC degree {left.degree() + right.degree()} exceeds the bound {max_degree}")
            if left.alpha_degree() + right.alpha_degree() > max_alpha_degree:
                raise BoundError(f"alpha-degree would exceed the bound {max_alpha_degree}")
        return _guard(left * right, max_degree, max_alpha_degree)

    return ev(node)
