"""Elements of Q(t) and polynomials over Q[t] / Q(t).

``RatFunc`` is a reduced fraction num/den of polynomials in t with rational
coefficients, den monic.  Polynomials in x over Q(t) are handled in their
integral form, i.e. as ``Poly`` objects whose coefficients are ``Poly``
objects in t.
"""

from fractions import Fraction

from .poly import Poly, gcd_rational, subresultant_resultant


def tpoly(c):
    """Coerce an int / Fraction / Poly to a polynomial in t."""
    if isinstance(c, Poly):
        return c
    return Poly.const(c)


class RatFunc:
    """An element of Q(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")
    _absorbs_poly = True

    def __init__(self, num, den=1, reduced=False):
        num, den = tpoly(num), tpoly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if not num:
                den = Poly.const(1)
            else:
                g = gcd_rational(num, den)
                if g.degree() > 0:
                    num, den = num.exquo(g), den.exquo(g)
                c = den.lc()
                if c != 1:
                    num = num.map(lambda v: Fraction(v) / c)
                    den = den.map(lambda v: Fraction(v) / c)
        self.num = num
        self.den = den

    @staticmethod
    def t():
        return RatFunc(Poly.gen(), reduced=True)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        return cls(tpoly(x), reduced=True)

    def is_poly(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self):
        return Fraction(self.num[0])

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    def degree(self):
        """deg num - deg den (minus the valuation at the degree place)."""
        return self.num.degree() - self.den.degree()

    def to_str(self, var="t"):
        n = self.num.to_str(var)
        if self.den == 1:
            return n
        d = self.den.to_str(var)
        if sum(1 for c in self.num if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den if c) > 1 or self.den.degree() > 0 and self.den.lc() != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"


def split_qt(x):
    """(numerator, denominator) of an element of Q(t), both in Q[t]."""
    x = RatFunc.coerce(x)
    return x.num, x.den


def tpoly_content(f):
    """Monic gcd (in Q[t]) of the t-polynomial coefficients of f in Q[t][x]."""
    g = Poly()
    for c in f.coeffs:
        g = gcd_rational(g, tpoly(c))
        if g.degree() == 0:
            return Poly.const(1)
    return g


def tpoly_primitive(f):
    """Divide f in Q[t][x] by its content; normalize so that lc(lc(f)) = 1."""
    if not f:
        return f
    f = f.map(tpoly)
    g = tpoly_content(f)
    if g.degree() > 0:
        f = f.map(lambda c: c.exquo(g))
    lead = f.lc().lc()
    if lead != 1:
        f = f.map(lambda c: c.map(lambda v: Fraction(v) / lead))
    return f


def to_qt_integral(f):
    """Clear denominators of f in Q(t)[x]: returns (scale, F) with F in Q[t][x]
    primitive and f = scale * F."""
    den = Poly.const(1)
    for c in f.coeffs:
        c = RatFunc.coerce(c)
        den = (den * c.den).exquo(gcd_rational(den, c.den))
    F = f.map(lambda c: _times_den(RatFunc.coerce(c), den))
    P = tpoly_primitive(F)
    # f = F / den and F = k * P for a scalar k in Q(t)
    k = RatFunc(F.lc(), P.lc())
    return k / RatFunc(den), P


def _times_den(c, den):
    return (c.num * den).exquo(c.den)


def to_ratfunc_poly(F):
    return F.map(RatFunc.coerce)


def gcd_qt(f, g):
    """Monic gcd in Q(t)[x] (coefficients RatFunc), via a primitive PRS in Q[t][x]."""
    if not f:
        return _monic_qt(g)
    if not g:
        return _monic_qt(f)
    a = to_qt_integral(f)[1]
    b = to_qt_integral(g)[1]
    if a.degree() < b.degree():
        a, b = b, a
    while b:
        r = a.prem(b)
        a = b
        b = tpoly_primitive(r) if r else r
    return _monic_qt(a)


def _monic_qt(f):
    f = f.map(RatFunc.coerce)
    if not f:
        return f
    lc = f.lc()
    return f.map(lambda c: c / lc)


def exquo_qt(f, g):
    """Exact division in Q(t)[x], returning a polynomial with RatFunc coefficients."""
    q, r = divmod(f.map(RatFunc.coerce), g.map(RatFunc.coerce))
    if r:
        raise ArithmeticError("inexact division in Q(t)[x]")
    return q


def is_qt_poly(f):
    return any(isinstance(c, (RatFunc, Poly)) for c in f.coeffs)


def resultant_qt_integral(A, B):
    """Resultant of A, B in Q[t][x] (t-polynomial coefficients) as an element of Q[t]."""
    A = A.map(tpoly)
    B = B.map(tpoly)
    return tpoly(subresultant_resultant(A, B, content=tpoly_content))

