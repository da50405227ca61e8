"""Recursive-descent parser for element and word expressions.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := atom ('*' atom)*
    atom   := number ['/' number] | 'q' [pow] | 'gam' ['(' half ')' | pow]
            | 'xm(' int ')' | 'Wpsi(' int ')' | '(' expr ')'
    pow    := '^' (int | '(' half ')')
    half   := int ['/' '2']

Products are taken in the word algebra, so ``xm(1)*xm(0)`` is a word that
normalizes to ``q^(-2)*xm(0)*xm(1)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .kashiwara import KElement, k_act, wpsi, xm
from .nqminus import UNIT, Element
from .scalar import Scalar


class ParseError(ValueError):
    """Syntax error; ``pos`` is a 0-based offset into the source text."""

    exit_code = 1

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


class DomainError(ValueError):
    """Well-formed input outside the accepted domain."""

    exit_code = 2


_TOKEN = re.compile(r"\s*(?:(\d+)|(xm|Wpsi|gam|q)|([-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # num, name, op, end
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        else:
            toks.append(_Tok("op", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.text, self.cur.pos)

    def accept(self, value: str) -> bool:
        if self.cur.kind == "op" and self.cur.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            found = self.cur.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.cur.kind != "num":
            raise self.error("expected an integer")
        v = int(self.cur.value)
        self.i += 1
        return sign * v

    def half(self) -> int:
        """An exponent ``a`` or ``a/2``, returned in half-steps."""
        a = self.integer()
        if self.accept("/"):
            tok = self.cur
            d = self.integer()
            if d != 2:
                raise ParseError("exponent denominator must be 2", self.text, tok.pos)
            return a
        return 2 * a

    def power(self) -> int:
        if not self.accept("^"):
            return 2
        if self.accept("("):
            h = self.half()
            self.expect(")")
            return h
        return 2 * self.integer()

    def parse(self) -> KElement:
        out = self.expr()
        if self.cur.kind != "end":
            raise self.error(f"unexpected {self.cur.value!r}")
        return out

    def expr(self) -> KElement:
        negate = self.accept("-")
        out = self.term()
        if negate:
            out = -out
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> KElement:
        out = self.atom()
        while self.accept("*"):
            out = out * self.atom()
        return out

    def atom(self) -> KElement:
        tok = self.cur
        if tok.kind == "num":
            self.i += 1
            value = Fraction(int(tok.value))
            if self.accept("/"):
                den_tok = self.cur
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", self.text, den_tok.pos)
                value /= den
            return KElement.scalar(Scalar.const(value))
        if tok.kind == "name":
            self.i += 1
            if tok.value == "q":
                return KElement.scalar(Scalar.monomial(1, self.power(), 0))
            if tok.value == "gam":
                if self.accept("("):
                    h = self.half()
                    self.expect(")")
                    return KElement.scalar(Scalar.monomial(1, 0, h))
                return KElement.scalar(Scalar.monomial(1, 0, self.power()))
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return KElement.word(xm(n) if tok.value == "xm" else wpsi(n))
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.value or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_word(text: str) -> KElement:
    """Parse a combination of words in ``xm``, ``Wpsi`` and ``gam``."""
    return _Parser(text).parse()


def parse_element(text: str) -> Element:
    """Parse an element of the x^- algebra and return its normal form."""
    w = parse_word(text)
    if w.has_omega():
        raise DomainError("Wpsi is not allowed in an element expression; use kact")
    return k_act(w, UNIT)


def parse_int_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"bad coefficient list {text!r}") from exc


def parse_window(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise DomainError(f"window must look like a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise DomainError(f"empty window {text!r}")
    return lo, hi
