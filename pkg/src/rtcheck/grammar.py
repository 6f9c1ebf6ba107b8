"""Tiny closed-form expression grammar for custom defect entries.

Grammar (precedence low to high):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := NUMBER | 'k' | '(' expr ')'

NUMBER is a decimal literal with an optional imaginary suffix 'i' or 'j'.
The single free variable is the momentum k; evaluation is complex.
"""

from __future__ import annotations

import re
from typing import Callable

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?[ij]?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[()+\-*/]))"
)


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"bad character at {text[pos:]!r}")
        pos = m.end()
        if m.lastgroup:
            tokens.append((m.lastgroup, m.group(m.lastgroup)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            node = ("+", node, rhs) if op == "+" else ("-", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            rhs = self.unary()
            node = ("*", node, rhs) if op == "*" else ("/", node, rhs)
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.atom()

    def atom(self):
        kind, value = self.take()
        if kind == "num":
            if value[-1] in "ij":
                return ("const", complex(0.0, float(value[:-1])))
            return ("const", complex(float(value)))
        if kind == "name":
            if value != "k":
                raise ExpressionError(f"unknown name {value!r}; only 'k' is allowed")
            return ("var",)
        if (kind, value) == ("op", "("):
            node = self.expr()
            if self.take() != ("op", ")"):
                raise ExpressionError("unbalanced parentheses")
            return node
        raise ExpressionError(f"unexpected token {value!r}")


def _node_eval(node, k: complex) -> complex:
    op = node[0]
    if op == "const":
        return node[1]
    if op == "var":
        return k
    if op == "neg":
        return -_node_eval(node[1], k)
    a = _node_eval(node[1], k)
    b = _node_eval(node[2], k)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ExpressionError(f"bad node {op!r}")


def parse_expression(text: str) -> Callable[[float], complex]:
    """Compile a closed-form expression in k into an evaluator."""
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    if parser.peek() != (None, None):
        raise ExpressionError(f"trailing input near {parser.peek()[1]!r}")

    def fn(k: float) -> complex:
        return _node_eval(node, complex(k))

    return fn
