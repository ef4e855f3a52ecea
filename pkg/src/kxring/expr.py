"""Parser for module expressions.

Grammar (whitespace-insensitive)::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := [INT '*'] atom
    atom  := 'x' ['^' INT]              nilpotent k[x]/x^s
           | '(' poly ')' ['^' INT]     band k[x]/f^s
           | 'J(' rational ',' INT ')'  real Jordan block (real-closed model)
           | 'R(' a+bi ',' INT ')'      real 2x2-block (real-closed model)
           | 'S(' INT ',' INT ')'       quiver string
           | 'B(' poly ',' INT ')'      quiver band
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .fields import Field, GaussianRational, RealClosedModel
from .poly import parse_poly
from .quiver import BandDesc, QuiverRingElement, StringDesc
from .repring import Band, JBlock, Nil, RBlock, RingElement
from .representation import QuiverShape

_RATIONAL = r"\d+(?:/\d+)?"
_GAUSS = re.compile(
    rf"^(?P<re>[+-]?{_RATIONAL}(?![\d/]*\*?i))?"
    rf"(?:(?P<sign>[+-])?(?P<im>{_RATIONAL})?\*?i)?$"
)


def parse_rational(text: str) -> Fraction:
    t = text.replace(" ", "")
    if not re.fullmatch(rf"[+-]?{_RATIONAL}", t):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(t)


def parse_gaussian(text: str) -> GaussianRational:
    """``a+bi`` forms such as ``1+i``, ``2i``, ``-i``, ``1/2-3/4i``, ``3``."""
    t = text.replace(" ", "")
    m = _GAUSS.match(t)
    if not t or not m or (m.group("re") is None and "i" not in t):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if t.endswith("i"):
        im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_part = -im_part
    return GaussianRational(re_part, im_part)


class _ModuleParser:
    def __init__(self, text: str, field: Field, shape: QuiverShape | None):
        self.text = text
        self.field = field
        self.shape = shape
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def closing(self, start: int) -> int:
        """Index of the ')' matching the '(' at ``start``."""
        depth = 0
        for k in range(start, len(self.text)):
            if self.text[k] == "(":
                depth += 1
            elif self.text[k] == ")":
                depth -= 1
                if depth == 0:
                    return k
        self.error("unbalanced parenthesis", start)

    def args(self) -> tuple[str, int, str, int]:
        """Split ``( first , second )`` at the last top-level comma."""
        self.peek()
        start = self.pos
        if self.peek() != "(":
            self.error("expected '('")
        end = self.closing(start)
        inner = self.text[start + 1:end]
        depth, comma = 0, -1
        for k, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                comma = k
        if comma < 0:
            self.error("expected two comma-separated arguments", start)
        self.pos = end + 1
        return inner[:comma], start + 1, inner[comma + 1:], start + 2 + comma

    def small_int(self, text: str, pos: int) -> int:
        t = text.strip()
        if not t.isdigit():
            self.error(f"expected a nonnegative integer, got {t!r}", pos)
        return int(t)

    def positive(self, value: int, pos: int) -> int:
        if value < 1:
            self.error("size must be positive", pos)
        return value

    def parse(self):
        terms = []
        if not self.peek():
            self.error("empty expression")
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            coeff, desc = self.term()
            terms.append((desc, sign * coeff))
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        if self.shape is not None:
            return QuiverRingElement(self.shape, self.field, terms)
        return RingElement(self.field, terms)

    def term(self):
        coeff = 1
        if self.peek().isdigit():
            coeff = self.integer()
            self.take("*")
        return coeff, self.atom()

    def exponent(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            pos = self.pos
            return self.positive(self.integer(), pos)
        return 1

    def atom(self):
        ch = self.peek()
        start = self.pos
        quiver = self.shape is not None
        if ch in ("S", "B"):
            if not quiver:
                self.error(f"{ch}(...) terms need a quiver shape")
            self.pos += 1
            a, apos, b, bpos = self.args()
            if ch == "S":
                i, j = self.small_int(a, apos), self.small_int(b, bpos)
                if j < i:
                    self.error("string needs j >= i", start)
                return StringDesc.from_ends(i, j, self.shape.n)
            f = parse_poly(a, self.field, apos)
            return BandDesc.checked(f, self.positive(self.small_int(b, bpos), bpos))
        if quiver:
            self.error("quiver expressions use S(i,j) and B(poly,s)")
        if ch in ("J", "R"):
            if not isinstance(self.field, RealClosedModel):
                self.error(f"{ch}(...) blocks need the real-closed model (--field rc)")
            self.pos += 1
            a, apos, b, bpos = self.args()
            s = self.positive(self.small_int(b, bpos), bpos)
            try:
                lam = parse_rational(a) if ch == "J" else parse_gaussian(a)
            except ValueError as exc:
                self.error(str(exc), apos)
            if ch == "J":
                return Nil(s) if lam == 0 else JBlock(lam, s)
            return RBlock(lam, s)
        if ch == "x":
            self.pos += 1
            return Nil(self.exponent())
        if ch == "(":
            end = self.closing(start)
            f = parse_poly(self.text[start + 1:end], self.field, start + 1)
            self.pos = end + 1
            s = self.exponent()
            if isinstance(self.field, RealClosedModel):
                if f.degree != 1:
                    self.error("over the real-closed model write J(a,s) or R(a+bi,s)", start)
                lam = -f.monic().coeffs[0]
                return Nil(s) if lam == 0 else JBlock(lam, s)
            return Band.checked(f, s)
        self.error("expected x^s, (poly)^s, J(..), R(..), S(..) or B(..)")


def parse_module_expr(text: str, field: Field, shape: QuiverShape | None = None):
    """Parse a sum of module terms into a RingElement (or QuiverRingElement
    when ``shape`` is given)."""
    return _ModuleParser(text, field, shape).parse()
