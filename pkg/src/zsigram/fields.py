"""The two supported base fields, Q and Q(t), behind one small interface.

Field elements are ``Fraction`` (Q) or ``RatFunc`` (Q(t)); ring elements are
``int`` or polynomials in t.  Points of the projective line are field
elements or the sentinel :data:`INF`.
"""

from fractions import Fraction
from math import gcd

from .exact import Poly, RatFunc, tpoly
from .exact.poly import gcd_rational
from .exact.ratfunc import tpoly_content


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


class RationalField:
    name = "Q"
    var = None

    def coerce(self, x):
        if x is INF:
            return x
        if isinstance(x, RatFunc):
            if not x.is_constant():
                raise TypeError("element of Q(t) is not rational")
            return x.constant_value()
        return Fraction(x)

    def split(self, x):
        """(numerator, denominator) in lowest terms, denominator positive."""
        x = Fraction(x)
        return x.numerator, x.denominator

    def make(self, a, b):
        return Fraction(a, b)

    def ring(self, c):
        return int(c)

    def ring_one(self):
        return 1

    def ring_gcd(self, a, b):
        return gcd(a, b)

    def ring_content(self, values):
        g = 0
        for v in values:
            g = gcd(g, v)
            if g == 1:
                break
        return g

    def ring_divide(self, a, g):
        return a // g

    def ring_is_unit(self, a):
        return abs(a) == 1

    def ring_norm_sign(self, a):
        """Scalar u making u*a 'positive' (lc > 0)."""
        return -1 if a < 0 else 1

    def ring_size(self, a):
        """Size used for resource guards: bit length."""
        return abs(a).bit_length()

    def fmt(self, x):
        if x is INF:
            return "inf"
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def fmt_ring(self, a):
        return str(a)

    def to_field_poly(self, f):
        return f

    def sort_key(self, x):
        if x is INF:
            return (1, 0)
        return (0, Fraction(x))


class FunctionField:
    name = "Qt"
    var = "t"

    def coerce(self, x):
        if x is INF:
            return x
        return RatFunc.coerce(x)

    def split(self, x):
        x = RatFunc.coerce(x)
        return x.num, x.den

    def make(self, a, b):
        return RatFunc(a, b)

    def ring(self, c):
        return tpoly(c)

    def ring_one(self):
        return Poly.const(1)

    def ring_gcd(self, a, b):
        return gcd_rational(tpoly(a), tpoly(b))

    def ring_content(self, values):
        return tpoly_content(Poly(list(values)))

    def ring_divide(self, a, g):
        return tpoly(a).exquo(tpoly(g))

    def ring_is_unit(self, a):
        a = tpoly(a)
        return a.degree() == 0

    def ring_norm_sign(self, a):
        a = tpoly(a)
        return 1 / Fraction(a.lc()) if a else 1

    def ring_size(self, a):
        return tpoly(a).degree()

    def fmt(self, x):
        if x is INF:
            return "inf"
        return RatFunc.coerce(x).to_str("t")

    def fmt_ring(self, a):
        return tpoly(a).to_str("t")

    def to_field_poly(self, f):
        return f.map(RatFunc.coerce)

    def sort_key(self, x):
        if x is INF:
            return (1,)
        x = RatFunc.coerce(x)
        return (0, x.num.degree(), x.den.degree(),
                tuple(Fraction(c) for c in x.num.coeffs),
                tuple(Fraction(c) for c in x.den.coeffs))


QQ = RationalField()
QQt = FunctionField()


def field_by_name(name):
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Qt", "QQt", "Q(t)"):
        return QQt
    raise ValueError(f"unknown field {name!r}")


def field_of(x):
    """Smallest supported field containing x (an element or a polynomial's coefficients)."""
    if isinstance(x, Poly):
        return QQt if any(isinstance(c, (RatFunc, Poly)) for c in x.coeffs) else QQ
    if isinstance(x, RatFunc):
        return QQt
    return QQ
