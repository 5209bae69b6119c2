"""Expression trees for user-defined Kahler potentials.

Grammar (recursive descent, usual precedence; ``^`` binds tightest and is
right-associative)::

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := "-" factor | power
    power   := atom ("^" factor)?
    atom    := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

Identifiers: ``z1 .. zn`` (complex coordinates), function names ``conj``,
``log``, ``exp``.  Exponents of ``^`` must evaluate to real constants; ``log``
arguments must be real-valued with positive value at the expansion point.

Expressions differentiate through jet arithmetic, so a parsed potential
provides trustworthy derivatives to any order the jet tables carry.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ExpressionError
from .jets import ComplexJet, jet_exp, jet_log, jet_powr

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)

_FUNCTIONS = ("conj", "log", "exp")


class Node:
    def children(self):
        return ()


class Const(Node):
    def __init__(self, value):
        self.value = float(value)


class Var(Node):
    def __init__(self, index):
        self.index = index  # 0-based coordinate index


class Call(Node):
    def __init__(self, name, arg):
        self.name = name
        self.arg = arg

    def children(self):
        return (self.arg,)


class BinOp(Node):
    def __init__(self, op, left, right):
        self.op = op
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)


class Neg(Node):
    def __init__(self, arg):
        self.arg = arg

    def children(self):
        return (self.arg,)


def tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ExpressionError(f"bad token at: {text[pos:pos + 12]!r}")
        if m.lastgroup == "num":
            out.append(("num", float(m.group("num"))))
        elif m.lastgroup == "ident":
            out.append(("ident", m.group("ident")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, nvars):
        self.toks = tokens
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def eat(self, kind=None, value=None):
        k, v = self.peek()
        if k is None or (kind and k != kind) or (value and v != value):
            raise ExpressionError(f"unexpected token {v!r} (wanted {value or kind})")
        self.i += 1
        return v

    def parse(self):
        node = self.expr()
        if self.i != len(self.toks):
            raise ExpressionError(f"trailing input near {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.eat("op")
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.eat("op")
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek() == ("op", "-"):
            self.eat("op")
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.eat("op")
            return BinOp("^", base, self.factor())
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.eat()
            return Const(val)
        if kind == "ident":
            self.eat()
            if val in _FUNCTIONS:
                self.eat("op", "(")
                arg = self.expr()
                self.eat("op", ")")
                return Call(val, arg)
            m = re.fullmatch(r"z(\d+)", val)
            if not m:
                raise ExpressionError(f"unknown identifier {val!r}")
            idx = int(m.group(1)) - 1
            if not 0 <= idx < self.nvars:
                raise ExpressionError(
                    f"coordinate {val} out of range for dimension {self.nvars}"
                )
            return Var(idx)
        if (kind, val) == ("op", "("):
            self.eat()
            node = self.expr()
            self.eat("op", ")")
            return node
        raise ExpressionError(f"unexpected token {val!r}")


def parse(text: str, nvars: int) -> Node:
    return _Parser(tokenize(text), nvars).parse()


def const_value(node: Node):
    """Evaluate a constant subtree to a real number, or raise."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return -const_value(node.arg)
    if isinstance(node, BinOp):
        a, b = const_value(node.left), const_value(node.right)
        return {"+": a + b, "-": a - b, "*": a * b, "/": a / b, "^": a**b}[node.op]
    raise ExpressionError("exponent must be a real constant expression")


def eval_jet(node: Node, coords) -> ComplexJet:
    """Evaluate to a ComplexJet given the list of coordinate jets z_1..z_n."""
    if isinstance(node, Const):
        z0 = coords[0]
        return ComplexJet.constant(node.value, z0.nvars, z0.order, z0.re.base_point)
    if isinstance(node, Var):
        return coords[node.index]
    if isinstance(node, Neg):
        return -eval_jet(node.arg, coords)
    if isinstance(node, Call):
        arg = eval_jet(node.arg, coords)
        if node.name == "conj":
            return arg.conj()
        if node.name == "log":
            return ComplexJet.from_real(jet_log(arg.as_real()))
        if node.name == "exp":
            return ComplexJet.from_real(jet_exp(arg.as_real()))
        raise ExpressionError(f"unknown function {node.name}")
    if isinstance(node, BinOp):
        if node.op == "^":
            base = eval_jet(node.left, coords)
            p = const_value(node.right)
            if p == int(p) and p >= 0:
                out = ComplexJet.constant(
                    1.0, base.nvars, base.order, base.re.base_point
                )
                for _ in range(int(p)):
                    out = out * base
                return out
            return ComplexJet.from_real(jet_powr(base.as_real(), p))
        a = eval_jet(node.left, coords)
        b = eval_jet(node.right, coords)
        return {
            "+": lambda: a + b,
            "-": lambda: a - b,
            "*": lambda: a * b,
            "/": lambda: a / b,
        }[node.op]()
    raise ExpressionError(f"cannot evaluate node {node!r}")


def eval_value(node: Node, z) -> complex:
    """Plain numeric evaluation at a complex point z = (z_1, ..., z_n)."""
    if isinstance(node, Const):
        return complex(node.value)
    if isinstance(node, Var):
        return complex(z[node.index])
    if isinstance(node, Neg):
        return -eval_value(node.arg, z)
    if isinstance(node, Call):
        a = eval_value(node.arg, z)
        if node.name == "conj":
            return np.conj(a)
        if node.name == "log":
            if abs(a.imag) > 1e-12 * max(1.0, abs(a.real)) or a.real <= 0:
                raise ExpressionError("log argument must be real and positive")
            return complex(np.log(a.real))
        return complex(np.exp(a))
    if isinstance(node, BinOp):
        a = eval_value(node.left, z)
        if node.op == "^":
            return a ** const_value(node.right)
        b = eval_value(node.right, z)
        return {"+": a + b, "-": a - b, "*": a * b, "/": a / b}[node.op]
    raise ExpressionError(f"cannot evaluate node {node!r}")
