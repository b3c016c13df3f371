"""A tiny expression language for curve coordinates.

Grammar (``^`` binds tighter than unary minus, so ``-t^2`` is ``-(t^2)``)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ("^" ["-" | "+"] NUMBER)?
    atom     := NUMBER | "t" | FUNC "(" expr ")" | "(" expr ")"
    FUNC     := sin | cos | sqrt | exp

Exponents must be integer literals. Errors carry the byte offset of the
offending token.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from . import jet as J
from .errors import ExprSyntaxError, NonIntegerExponent, UnknownIdentifier


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Param:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Sin:
    arg: "Node"


@dataclass(frozen=True)
class Cos:
    arg: "Node"


@dataclass(frozen=True)
class Sqrt:
    arg: "Node"


@dataclass(frozen=True)
class Exp:
    arg: "Node"


Node = Union[Const, Param, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Sqrt, Exp]

FUNCTIONS = {"sin": Sin, "cos": Cos, "sqrt": Sqrt, "exp": Exp}
_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


def tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind != "op":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ExprSyntaxError(f"expected {text!r}, found {found}", tok.offset)
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = _BINARY[op](node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = _BINARY[op](node, self.unary())
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand) if tok.text == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            sign = 1
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                sign = -1 if tok.text == "-" else 1
                self.take()
                tok = self.peek()
            if tok.kind != "num":
                if tok.kind == "end":
                    raise ExprSyntaxError("missing exponent", tok.offset)
                raise NonIntegerExponent("exponent must be an integer literal", tok.offset)
            self.take()
            value = float(tok.text)
            if not value.is_integer():
                raise NonIntegerExponent(f"exponent {tok.text} is not an integer", tok.offset)
            return Pow(base, sign * int(value))
        return base

    def atom(self) -> Node:
        tok = self.take()
        if tok.kind == "num":
            return Const(float(tok.text))
        if tok.kind == "name":
            if tok.text == "t":
                return Param()
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return FUNCTIONS[tok.text](arg)
            raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.offset)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "end":
            raise ExprSyntaxError("unexpected end of input", tok.offset)
        raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.offset)


def parse_expression(src: str) -> Node:
    """Parse ``src`` into an AST."""
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src).parse()


# printing -------------------------------------------------------------------

_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def to_source(node: Node) -> str:
    """Render ``node`` so that ``parse_expression`` rebuilds the same tree."""
    if isinstance(node, Const):
        text = repr(float(node.value))
        return f"({text})" if node.value < 0 else text
    if isinstance(node, Param):
        return "t"
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Pow):
        return f"{_atomic(node.base)}^{node.exponent}"
    if type(node) in _SYMBOL:
        return f"({to_source(node.left)} {_SYMBOL[type(node)]} {to_source(node.right)})"
    for name, cls in FUNCTIONS.items():
        if isinstance(node, cls):
            return f"{name}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def _atomic(node: Node) -> str:
    text = to_source(node)
    if isinstance(node, (Param, Sin, Cos, Sqrt, Exp)) or text.startswith("("):
        return text
    return f"({text})"


# evaluation -----------------------------------------------------------------


def _evaluate(node: Node, t, lib):
    ev = lambda n: _evaluate(n, t, lib)  # noqa: E731
    if isinstance(node, Const):
        return lib["const"](node.value)
    if isinstance(node, Param):
        return t
    if isinstance(node, Neg):
        return -ev(node.operand)
    if isinstance(node, Add):
        return ev(node.left) + ev(node.right)
    if isinstance(node, Sub):
        return ev(node.left) - ev(node.right)
    if isinstance(node, Mul):
        return ev(node.left) * ev(node.right)
    if isinstance(node, Div):
        return lib["div"](ev(node.left), ev(node.right))
    if isinstance(node, Pow):
        return lib["pow"](ev(node.base), node.exponent)
    for name, cls in FUNCTIONS.items():
        if isinstance(node, cls):
            return lib[name](ev(node.arg))
    raise TypeError(f"not an expression node: {node!r}")


def _real_div(a: float, b: float) -> float:
    return a / b


def _real_sqrt(x: float) -> float:
    return math.sqrt(x)


_REAL = {
    "const": float,
    "div": _real_div,
    "pow": lambda x, n: x**n,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": _real_sqrt,
    "exp": math.exp,
}


def evaluate(node: Node, t: float) -> float:
    """Plain floating point evaluation at ``t``."""
    return float(_evaluate(node, float(t), _REAL))


def evaluate_jet(node: Node, t: float, order: int) -> J.Jet:
    """Derivatives of the expression up to ``order`` at ``t``."""
    lib = {
        "const": lambda v: J.Jet.constant(v, order),
        "div": lambda a, b: a / b,
        "pow": lambda x, n: x**n,
        "sin": J.sin,
        "cos": J.cos,
        "sqrt": J.sqrt,
        "exp": J.exp,
    }
    return _evaluate(node, J.Jet.variable(t, order), lib)
