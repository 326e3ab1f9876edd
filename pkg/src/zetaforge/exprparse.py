"""Tiny precedence-climbing parser for ring expressions.

The grammar covers integer literals, named atoms, quoted symbols, the
binary operators ``+ - * / ^``, unary minus and parentheses.  Evaluation
happens on the fly in whatever ring the caller provides through
``atom`` and ``const``; exponents must be integer literals.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

_TOKEN = re.compile(r"""\s*(?:
    (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<quoted>"[^"]*"|'[^']*')
  | (?P<op>\*\*|[-+*/^()])
)""", re.VERBOSE)


class ExprSyntaxError(ValueError):
    pass


def tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "op" and val == "**":
            val = "^"
        out.append((kind, val))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, atom, const, allow_div):
        self.toks = tokens
        self.i = 0
        self.atom = atom
        self.const = const
        self.allow_div = allow_div

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, val=None):
        tok = self.peek()
        if tok[0] is None or (val is not None and tok[1] != val):
            raise ExprSyntaxError(f"expected {val or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ExprSyntaxError("empty expression")
        v = self.sum()
        if self.i != len(self.toks):
            raise ExprSyntaxError(f"trailing input at token {self.peek()[1]!r}")
        return v

    def sum(self):
        v = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def product(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                v = v * self.unary()
            else:
                if not self.allow_div:
                    raise ExprSyntaxError("division is not allowed here")
                v = v * Fraction(1, self._int_literal())
        return v

    def _int_literal(self) -> int:
        kind, val = self.take()
        if kind != "int" or int(val) == 0:
            raise ExprSyntaxError("can only divide by a nonzero integer literal")
        return int(val)

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[1] == "^":
            self.take()
            return base ** self._exponent()
        return base

    def _exponent(self) -> int:
        sign, paren = 1, False
        if self.peek()[1] == "(":
            self.take()
            paren = True
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "int":
            raise ExprSyntaxError(f"exponent must be an integer literal, got {val!r}")
        if paren:
            self.take(")")
        return sign * int(val)

    def primary(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.const(int(val))
        if kind in ("name", "quoted"):
            self.take()
            return self.atom(val if kind == "name" else val[1:-1], kind == "quoted")
        if val == "(":
            self.take()
            v = self.sum()
            self.take(")")
            return v
        raise ExprSyntaxError(f"unexpected token {val!r}")


def parse_expr(text: str, atom: Callable[[str, bool], object],
               const: Callable[[int], object], allow_div: bool = False):
    """Evaluate ``text``; ``atom(name, quoted)`` resolves identifiers."""
    return _Parser(tokenize(text), atom, const, allow_div).parse()
