"""Recursive-descent parser for rational maps and points.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | implicit)*
    unary  := ('-' | '+') unary | power
    power  := base ('^' integer)?
    base   := integer | 'x' | 't' | '(' expr ')'

A number directly followed by a variable or a parenthesis is an implicit
product, so ``2x`` and ``3(x+1)`` are accepted.  ``t`` is allowed only over
Q(t); points may also be written ``inf``, ``oo`` or ``∞``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import RationalFunction, normalize
from .errors import ParseError, PreconditionError
from .exact import Poly, RatFunc
from .fields import INF, QQ, QQt, field_by_name

_SYMBOLS = "+-*/^()"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            word = text[i:j]
            if word not in ("x", "t"):
                raise ParseError(f"unknown symbol {word!r}", line, col)
            out.append(Token(word, word, line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            out.append(Token(ch, ch, line, col))
            i, col = i + 1, col + 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("end", "", line, col))
    return out


class _Value:
    """num/den with num, den polynomials in x over the field."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num, self.den = num, den

    def __add__(self, o):
        return _Value(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Value(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Value(self.num * o.num, self.den * o.den)

    def __neg__(self):
        return _Value(-self.num, self.den)


class _Parser:
    def __init__(self, text, K, allow_x=True):
        self.toks = tokenize(text)
        self.pos = 0
        self.K = K
        self.allow_x = allow_x
        self.one = Fraction(1) if K is QQ else RatFunc(1)

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.column)
        self.pos += 1
        return tok

    def const(self, c):
        return _Value(Poly([c]), Poly([self.one]))

    def parse(self):
        v = self.expr()
        self.take("end")
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            k = self.peek().kind
            if k == "*":
                self.take()
                v = v * self.unary()
            elif k == "/":
                tok = self.take()
                w = self.unary()
                if not w.num:
                    raise ParseError("division by zero", tok.line, tok.column)
                v = _Value(v.num * w.den, v.den * w.num)
            elif k in ("x", "t", "("):
                v = v * self.power()
            else:
                return v

    def unary(self):
        k = self.peek().kind
        if k == "-":
            self.take()
            return -self.unary()
        if k == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.base()
        if self.peek().kind == "^":
            self.take()
            if self.peek().kind == "-":
                tok = self.take()
                raise ParseError("exponents must be nonnegative integers", tok.line, tok.column)
            e = int(self.take("int").text)
            out = self.const(self.one)
            for _ in range(e):
                out = out * v
            v = out
        return v

    def base(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return self.const(Fraction(int(tok.text)) if self.K is QQ else RatFunc(int(tok.text)))
        if tok.kind == "x":
            if not self.allow_x:
                raise ParseError("x is not allowed here", tok.line, tok.column)
            self.take()
            return _Value(Poly([0 * self.one, self.one]), Poly([self.one]))
        if tok.kind == "t":
            if self.K is not QQt:
                raise ParseError("t needs --field Qt", tok.line, tok.column)
            self.take()
            return self.const(RatFunc(Poly.gen()))
        if tok.kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {got}", tok.line, tok.column)


@dataclass(frozen=True)
class MapExpression:
    source: str
    phi: RationalFunction
    field: object


def _field(field):
    if field is None:
        return QQ
    return field_by_name(field) if isinstance(field, str) else field


def parse_map(text, field=None):
    """Parse a rational map in x; exact coefficients over Q or Q(t)."""
    K = _field(field)
    v = _Parser(text, K).parse()
    if not v.num:
        raise ParseError("the zero map is not a rational map of degree >= 1")
    try:
        phi = normalize(v.num, v.den, K)
    except PreconditionError as e:
        raise ParseError(str(e)) from None
    return MapExpression(text, phi, K)


def parse_value(text, field=None):
    """Parse a constant of the field (no x)."""
    K = _field(field)
    v = _Parser(text, K, allow_x=False).parse()
    num, den = v.num[0], v.den[0]
    if not den:
        raise ParseError("division by zero")
    return K.coerce(num / den)


def parse_point(text, field=None):
    """A point of P^1: a constant or inf / oo / ∞."""
    if text.strip().lower() in ("inf", "oo", "∞", "infinity"):
        return INF
    return parse_value(text, field)


def parse_tpoly(text):
    """A polynomial in t (for places of Q(t))."""
    v = _Parser(text, QQt, allow_x=False).parse()
    r = RatFunc.coerce(v.num[0]) / RatFunc.coerce(v.den[0])
    if not r.is_poly():
        raise ParseError("expected a polynomial in t")
    return r.num


def parse_xpoly(text, field=None):
    """A polynomial in x with field coefficients."""
    K = _field(field)
    v = _Parser(text, K).parse()
    if v.den.degree() != 0:
        raise ParseError("expected a polynomial in x")
    return v.num.map(lambda c: c / v.den[0])
