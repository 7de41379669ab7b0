"""Text <-> RatPoly.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | implicit)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT ('/' INT)? | 'x' | '(' expr ')'

``implicit`` is juxtaposition with a following ``x`` or ``(``, so ``2x``,
``5x^2`` and ``(x-1)(x+1)`` all work.  Division is only allowed inside a
rational literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .poly import RatPoly, render

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "op", "var", "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", src, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("op", m.group(2), start))
        else:
            if m.group(3) != "x":
                raise ParseError(f"unknown name {m.group(3)!r} (the variable is x)", src, start)
            toks.append(_Tok("var", "x", start))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.src, tok.pos)

    def eat(self, text=None, kind=None) -> _Tok | None:
        t = self.tok
        if (text is not None and t.text == text and t.kind == "op") or (kind and t.kind == kind):
            self.i += 1
            return t
        return None

    def parse(self) -> RatPoly:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return p

    def expr(self) -> RatPoly:
        p = self.term()
        while True:
            if self.eat("+"):
                p = p + self.term()
            elif self.eat("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> RatPoly:
        p = self.unary()
        while True:
            if self.eat("*"):
                p = p * self.unary()
            elif self.tok.kind == "var" or (self.tok.kind == "op" and self.tok.text == "("):
                p = p * self.power()
            elif self.tok.kind == "int":
                raise self.error("missing operator before number")
            else:
                return p

    def unary(self) -> RatPoly:
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> RatPoly:
        base = self.atom()
        if self.eat("^") or self.eat("**"):
            t = self.eat(kind="int")
            if t is None:
                raise self.error("exponent must be a nonnegative integer literal")
            e = int(t.text)
            if e > MAX_EXPONENT:
                raise self.error(f"exponent {e} exceeds the limit {MAX_EXPONENT}", t)
            return base**e
        return base

    def atom(self) -> RatPoly:
        t = self.tok
        if self.eat(kind="int"):
            value = Fraction(int(t.text))
            if self.eat("/"):
                d = self.eat(kind="int")
                if d is None:
                    raise self.error("division is only allowed in rational literals a/b")
                if int(d.text) == 0:
                    raise self.error("zero denominator", d)
                value /= int(d.text)
            return RatPoly.const(value)
        if self.eat(kind="var"):
            return RatPoly.x()
        if self.eat("("):
            p = self.expr()
            if not self.eat(")"):
                raise self.error("expected ')'")
            return p
        if t.kind == "end":
            raise self.error("unexpected end of input")
        if t.text == "/":
            raise self.error("division is only allowed in rational literals a/b")
        raise self.error(f"unexpected {t.text!r}")


def parse_poly(src: str) -> RatPoly:
    """Parse a polynomial in x with rational coefficients."""
    if not src or not src.strip():
        raise ParseError("empty polynomial expression", src or "", 0)
    return _Parser(src).parse()


@dataclass(frozen=True)
class PolyExpr:
    source: str
    parsed: RatPoly

    @classmethod
    def of(cls, source: str) -> "PolyExpr":
        return cls(source, parse_poly(source))

    @property
    def canonical(self) -> str:
        return render(self.parsed)


__all__ = ["parse_poly", "render", "PolyExpr", "MAX_EXPONENT"]
