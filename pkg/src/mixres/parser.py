"""Recursive-descent parser for mixed polynomial expressions.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' factor) | ('/' uint))*
    factor := base ('^' uint)?
    base   := 'z' uint | 'zb' uint | 'i' | int | int 'i'
            | '(' expr ')' | 'conj' '(' expr ')'

Multiplication must be written out; ``2z1`` is rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOutOfRange, ParseError
from .mixed_poly import ExponentPair, GaussianRational, MixedPolynomial, conjugate


class _Node:
    """Parsed expression, built before ``n`` is known."""


class _Const(_Node):
    def __init__(self, c):
        self.c = c


class _Var(_Node):
    def __init__(self, j, conj, pos):
        self.j, self.conj, self.pos = j, conj, pos


class _Bin(_Node):
    def __init__(self, op, a, b):
        self.op, self.a, self.b = op, a, b


class _Pow(_Node):
    def __init__(self, a, k):
        self.a, self.k = a, k


class _Conj(_Node):
    def __init__(self, a):
        self.a = a


class _Neg(_Node):
    def __init__(self, a):
        self.a = a


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def startswith(self, s: str) -> bool:
        self._skip()
        return self.text.startswith(s, self.pos)

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(repr(ch))
        self.pos += 1

    def fail(self, expected):
        got = self.peek()
        what = f"unexpected {got!r}" if got else "unexpected end of input"
        raise ParseError(what, self.pos, expected)

    def uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(
                "unexpected " + (repr(self.text[start]) if start < len(self.text) else "end of input"),
                start, "unsigned integer")
        return int(self.text[start:self.pos])

    def expr(self) -> _Node:
        if self.peek() == "-":
            self.pos += 1
            node = _Neg(self.term())
        else:
            node = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            self.pos += 1
            node = _Bin(op, node, self.term())
        return node

    def term(self) -> _Node:
        node = self.factor()
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            self.pos += 1
            if op == "*":
                node = _Bin("*", node, self.factor())
            else:
                at = self.pos
                d = self.uint()
                if d == 0:
                    raise ParseError("division by zero", at, "nonzero integer")
                node = _Bin("*", node, _Const(GaussianRational(Fraction(1, d))))
        return node

    def factor(self) -> _Node:
        node = self.base()
        if self.peek() == "^":
            self.pos += 1
            node = _Pow(node, self.uint())
        return node

    def base(self) -> _Node:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if self.startswith("conj"):
            self.pos += 4
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return _Conj(node)
        if self.startswith("zb"):
            self.pos += 2
            return _Var(self._index(), True, start)
        if ch == "z":
            self.pos += 1
            return _Var(self._index(), False, start)
        if ch == "i":
            self.pos += 1
            return _Const(GaussianRational(0, 1))
        if ch.isdigit():
            k = self.uint()
            if self.pos < len(self.text) and self.text[self.pos] == "i":
                self.pos += 1
                return _Const(GaussianRational(0, k))
            return _Const(GaussianRational(k))
        self.fail("variable, number, '(' or 'conj('")

    def _index(self) -> int:
        # no whitespace allowed between the letter and its index
        if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
            raise ParseError("missing variable index", self.pos, "unsigned integer")
        at = self.pos
        j = self.uint()
        if j < 1:
            raise IndexOutOfRange(f"variable index 0 at position {at}; indices start at 1")
        return j


def _max_index(node: _Node) -> int:
    if isinstance(node, _Var):
        return node.j
    if isinstance(node, _Bin):
        return max(_max_index(node.a), _max_index(node.b))
    if isinstance(node, (_Pow, _Conj, _Neg)):
        return _max_index(node.a)
    return 0


def _build(node: _Node, n: int) -> MixedPolynomial:
    if isinstance(node, _Const):
        return MixedPolynomial.constant(n, node.c)
    if isinstance(node, _Var):
        if node.j > n:
            raise IndexOutOfRange(
                f"variable index {node.j} at position {node.pos} exceeds n = {n}")
        return MixedPolynomial.variable(n, node.j, node.conj)
    if isinstance(node, _Neg):
        return -_build(node.a, n)
    if isinstance(node, _Conj):
        return conjugate(_build(node.a, n))
    if isinstance(node, _Pow):
        return _build(node.a, n) ** node.k
    a, b = _build(node.a, n), _build(node.b, n)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    return a * b


def parse_expression(text: str, n: int | None = None) -> MixedPolynomial:
    p = _Parser(text)
    if not p.peek():
        p.fail("expression")
    tree = p.expr()
    if p.peek():
        p.fail("'+', '-', '*', '/', '^' or end of input")
    if n is None:
        n = max(1, _max_index(tree))
    elif n < 1:
        raise ValueError("n must be positive")
    return _build(tree, n)


__all__ = ["parse_expression", "ExponentPair"]
