"""Recursive-descent parser for polynomial text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

Implicit multiplication (``2x``, ``x y``) and floating point literals are
rejected so that every accepted string has exactly one reading.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ratpoly import Poly


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ValueError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r} at position {position}")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None or m.end() == i:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch, pos = m.group(3), m.start(3)
            if ch == ".":
                raise PolySyntaxError("floating point literals are not allowed", pos)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", pos)
            tokens.append(Token("op", ch, pos))
        i = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, names: Sequence[str]):
        self.tokens = tokenize(src)
        self.i = 0
        self.names = {name: k for k, name in enumerate(names)}
        self.n = len(names)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def eat(self, kind: str, text: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def parse(self) -> Poly:
        if self.tok.kind == "end":
            raise PolySyntaxError("empty expression", 0)
        result = self.expr()
        if self.tok.kind != "end":
            t = self.tok
            if t.kind in ("int", "name") or t.text == "(":
                raise PolySyntaxError("implicit multiplication is not allowed; use '*'", t.pos)
            raise PolySyntaxError(f"unexpected {t.text!r}", t.pos)
        return result

    def expr(self) -> Poly:
        acc = self.term()
        while True:
            if self.eat("op", "+"):
                acc = acc + self.term()
            elif self.eat("op", "-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.eat("op", "*"):
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        if self.eat("op", "-"):
            return -self.unary()
        if self.eat("op", "+"):
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.eat("op", "^"):
            t = self.eat("int")
            if t is None:
                raise PolySyntaxError("exponent must be a non-negative integer", self.tok.pos)
            return base ** int(t.text)
        return base

    def atom(self) -> Poly:
        t = self.tok
        if self.eat("int"):
            value = Fraction(int(t.text))
            if self.eat("op", "/"):
                d = self.eat("int")
                if d is None:
                    raise PolySyntaxError("expected integer denominator", self.tok.pos)
                if int(d.text) == 0:
                    raise PolySyntaxError("zero denominator", d.pos)
                value /= int(d.text)
            return Poly.constant(self.n, value)
        if self.eat("name"):
            if t.text not in self.names:
                raise UnknownVariableError(t.text, t.pos)
            return Poly.var(self.n, self.names[t.text])
        if self.eat("op", "("):
            inner = self.expr()
            if not self.eat("op", ")"):
                raise PolySyntaxError("expected ')'", self.tok.pos)
            return inner
        if t.kind == "end":
            raise PolySyntaxError("unexpected end of input", t.pos)
        raise PolySyntaxError(f"unexpected {t.text!r}", t.pos)


def parse_poly(src: str, names: Sequence[str]) -> Poly:
    """Parse ``src`` into a polynomial over the ordered variable ``names``."""
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    return _Parser(src, names).parse()
