"""Exact arithmetic kernel: integers, Q, Q(t), GF(p) and polynomials over them.

The public operations dispatch on the coefficient type of their arguments:
``int``/``Fraction`` coefficients mean Q, ``RatFunc`` (or t-``Poly``)
coefficients mean Q(t), and an explicit ``modulus`` means GF(p).
"""

from fractions import Fraction

from . import modp
from .integers import (
    FactorBudget, FactorizationResult, int_factor, is_prime, is_proven_prime,
    next_prime, primes_up_to,
)
from .poly import (
    Poly, gcd_rational, is_rational_poly, rational_primitive, subresultant_resultant, yun,
)
from .ratfunc import (
    RatFunc, gcd_qt, resultant_qt_integral, to_qt_integral, tpoly,
)
from .roots import qt_rational_roots, rational_roots, roots_with_multiplicity

__all__ = [
    "Poly", "RatFunc", "FactorBudget", "FactorizationResult",
    "poly_gcd", "resultant", "discriminant", "squarefree_decomposition", "int_factor",
    "is_prime", "is_proven_prime", "next_prime", "primes_up_to",
    "rational_roots", "qt_rational_roots", "roots_with_multiplicity", "tpoly",
]


def _from_list(a):
    return Poly(a)


def poly_gcd(f, g, modulus=None):
    """Monic gcd over Q, Q(t), or GF(modulus); gcd(f, 0) is f made monic."""
    if modulus is not None:
        return _from_list(modp.gcd(modp.reduce(f.coeffs, modulus),
                                   modp.reduce(g.coeffs, modulus), modulus))
    if is_rational_poly(f) and is_rational_poly(g):
        return gcd_rational(f, g)
    return gcd_qt(f, g)


def _resultant_modp(f, g, p):
    a, b = modp.reduce(f.coeffs, p), modp.reduce(g.coeffs, p)
    if not a or not b:
        return 0
    res = 1
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        r = modp.rem(a, b, p)
        if not r:
            return 0
        # Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        if da * db % 2:
            res = -res
        res = res * pow(b[-1], da - (len(r) - 1), p) % p
        a, b = b, r
    return res * pow(b[0], len(a) - 1, p) % p


def resultant(f, g, modulus=None):
    """Res(f, g) = lc(f)^deg(g) * prod over roots r of f of g(r)."""
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if modulus is not None:
        return _resultant_modp(f, g, modulus)
    if is_rational_poly(f) and is_rational_poly(g):
        cf, F = rational_primitive(f)
        cg, G = rational_primitive(g)
        r = subresultant_resultant(F, G, content=None)
        out = cf ** g.degree() * cg ** f.degree() * r
        return out.numerator if out.denominator == 1 else out
    kf, F = to_qt_integral(f.map(RatFunc.coerce))
    kg, G = to_qt_integral(g.map(RatFunc.coerce))
    r = resultant_qt_integral(F, G)
    return kf ** g.degree() * kg ** f.degree() * RatFunc(r)


def discriminant(f, modulus=None):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree()
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    sign = -1 if n * (n - 1) // 2 % 2 else 1
    if modulus is not None:
        a = modp.reduce(f.coeffs, modulus)
        if len(a) - 1 < n:
            raise ValueError("leading coefficient vanishes modulo p")
        return sign * _resultant_modp(f, f.derivative(), modulus) * pow(a[-1], -1, modulus) % modulus
    r = resultant(f, f.derivative())
    lc = f.lc()
    if isinstance(r, RatFunc) or not is_rational_poly(f):
        return RatFunc.coerce(r) * sign / RatFunc.coerce(lc)
    out = Fraction(r) * sign / lc
    return out.numerator if out.denominator == 1 else out


def squarefree_decomposition(f, modulus=None):
    """[(g_i, i)] with f = c * prod g_i^i, g_i monic squarefree pairwise coprime.

    Over GF(p) the full characteristic-p algorithm is used, so the result is
    exact for every p (not only p > deg f).
    """
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if modulus is not None:
        return [(_from_list(g), i) for g, i in
                modp.squarefree_decomposition(modp.reduce(f.coeffs, modulus), modulus)]
    if f.degree() == 0:
        return []
    if is_rational_poly(f):
        return yun(f.map(Fraction), gcd_rational)
    return yun(f.map(RatFunc.coerce), gcd_qt)
