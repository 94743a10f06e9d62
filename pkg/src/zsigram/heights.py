"""Naive, tuple and canonical heights with an explicit comparison constant.

Heights are ``Decimal`` values computed from exact integer data at a fixed
precision (default 50 significant digits); over Q(t) they are integers
(degrees) returned as ``Decimal`` for a uniform interface.
"""

from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .dynamics import INF, evaluate, hom_resultant, reversed_pair, _check_size
from .errors import PreconditionError
from .exact import Poly, RatFunc
from .exact.poly import ext_gcd, gcd_rational
from .fields import QQ, QQt, field_of

DEFAULT_PRECISION = 50
_GUARD = 15


def _ln(n, precision):
    """ln of a positive int or Fraction, correctly rounded to ``precision`` digits."""
    n = Fraction(n)
    with localcontext() as ctx:
        ctx.prec = precision + _GUARD
        v = Decimal(n.numerator).ln()
        if n.denominator != 1:
            v -= Decimal(n.denominator).ln()
    with localcontext() as ctx:
        ctx.prec = precision
        return +v


def _ln_up(n, precision):
    """An upper bound for ln n, within one unit in the last place."""
    n = Fraction(n)
    if n == 1:
        return Decimal(0)
    with localcontext() as ctx:
        ctx.prec = precision + _GUARD
        v = Decimal(n.numerator).ln()
        if n.denominator != 1:
            v -= Decimal(n.denominator).ln()
        v += Decimal(10) ** (-(precision + 5))
    with localcontext() as ctx:
        ctx.prec = precision
        ctx.rounding = ROUND_CEILING
        return +v


def _field(x, K):
    if K is not None:
        return K
    return field_of(x) if x is not INF else QQ


def naive_height(x, K=None, precision=DEFAULT_PRECISION):
    """h(a/b) = log max(|a|, |b|) over Q; max(deg a, deg b) over Q(t); h(inf) = 0."""
    if x is INF:
        return Decimal(0)
    K = _field(x, K)
    a, b = K.split(K.coerce(x))
    if K is QQ:
        m = max(abs(a), b)
        return _ln(m, precision) if m > 1 else Decimal(0)
    return Decimal(max(a.degree(), b.degree(), 0))


def tuple_height(values, K=None, precision=DEFAULT_PRECISION):
    """Height of the projective tuple (z_1 : ... : z_n)."""
    values = list(values)
    if not values or all(not v for v in values):
        raise ValueError("height of the all-zero tuple")
    K = K or (QQt if any(isinstance(v, (RatFunc, Poly)) for v in values) else QQ)
    if K is QQ:
        fr = [Fraction(v) for v in values]
        den = lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = 0
        for v in ints:
            g = gcd(g, v)
        m = max(abs(v) for v in ints) // g
        return _ln(m, precision) if m > 1 else Decimal(0)
    rf = [RatFunc.coerce(v) for v in values]
    den = Poly.const(1)
    for r in rf:
        den = (den * r.den).exquo(gcd_rational(den, r.den))
    polys = [(r.num * den).exquo(r.den) for r in rf]
    g = Poly()
    for p in polys:
        g = gcd_rational(g, p)
    return Decimal(max(p.exquo(g).degree() for p in polys if p))


# -- comparison constant ----------------------------------------------------------

def _bezout(p, q):
    h, s, u = ext_gcd(p, q)
    if h.degree() != 0:
        raise ArithmeticError("map components are not coprime")
    return s, u


def _l1(f):
    return sum(abs(Fraction(c)) for c in f.coeffs)


def _maxdeg(f):
    return max((RatFunc.coerce(c).degree() for c in f.coeffs if c), default=0)


@lru_cache(maxsize=256)
def step_bound(phi, precision=DEFAULT_PRECISION):
    """B with |h(phi(x)) - d h(x)| <= B for every point x."""
    K = phi.field
    p, q = phi.num, phi.den
    pr, qr = reversed_pair(phi)
    R = hom_resultant(phi)
    if K is QQ:
        fp, fq = p.map(Fraction), q.map(Fraction)
        fpr, fqr = pr.map(Fraction), qr.map(Fraction)
        s1, u1 = _bezout(fp, fq)
        s2, u2 = _bezout(fpr, fqr)
        L = max(_l1(s1) + _l1(u1), _l1(s2) + _l1(u2))
        upper = _ln_up(max(_l1(p), _l1(q)), precision)
        lower = _ln_up(L * abs(R), precision)
        return max(upper, lower, Decimal(0))
    fp, fq = K.to_field_poly(p), K.to_field_poly(q)
    fpr, fqr = K.to_field_poly(pr), K.to_field_poly(qr)
    s1, u1 = _bezout(fp, fq)
    s2, u2 = _bezout(fpr, fqr)
    ldeg = max(_maxdeg(s1), _maxdeg(u1), _maxdeg(s2), _maxdeg(u2))
    upper = max(_maxdeg(p), _maxdeg(q))
    lower = ldeg + R.degree()
    return Decimal(max(upper, lower, 0))


@lru_cache(maxsize=256)
def comparison_constant(phi, precision=DEFAULT_PRECISION):
    """C_phi >= sup |h(x) - canonical height(x)|, as B / (d - 1)."""
    d = phi.degree
    if d < 2:
        raise PreconditionError("degree >= 2")
    B = step_bound(phi, precision)
    with localcontext() as ctx:
        ctx.prec = precision
        ctx.rounding = ROUND_CEILING
        return B / (d - 1)


# -- canonical height ----------------------------------------------------------------

@dataclass(frozen=True)
class HeightEstimate:
    value: Decimal
    gap: Decimal
    iterations: int


def canonical_height(phi, x, iterations=8, precision=DEFAULT_PRECISION):
    """h(phi^n(x)) / d^n with error at most C_phi / d^n."""
    if phi.degree < 2:
        raise PreconditionError("degree >= 2")
    if iterations < 1:
        raise PreconditionError("iterations >= 1")
    K = phi.field
    y = x if x is INF else K.coerce(x)
    for _ in range(iterations):
        y = evaluate(phi, y)
        _check_size(K, y)
    D = phi.degree ** iterations
    h = naive_height(y, K, precision + _GUARD)
    C = comparison_constant(phi, precision)
    with localcontext() as ctx:
        ctx.prec = precision + _GUARD
        v = h / D
    with localcontext() as ctx:
        ctx.prec = precision
        value = +v
        ctx.rounding = ROUND_CEILING
        gap = C / D
    return HeightEstimate(value, gap, iterations)
