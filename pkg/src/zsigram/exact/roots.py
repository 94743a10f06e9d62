"""Exact rational roots of polynomials over Q and over Q(t).

Both routines use the same trick: with a = lc(g) and n = deg g, the roots of
g are k/a where k runs over the roots of the monic polynomial
h(y) = a^(n-1) g(y/a), and those roots are integral (in Z, resp. Q[t]).
Over Q they are found by lifting roots mod p to p-adic precision beyond a
Cauchy bound; over Q(t) by lifting rational roots of a specialization to
power series in (t - t0) beyond a degree bound.  Every candidate is checked
exactly, so the output is always correct and complete.
"""

from fractions import Fraction
from itertools import count

from . import modp
from .integers import next_prime
from .poly import Poly, gcd_rational, is_rational_poly, rational_primitive
from .ratfunc import RatFunc, gcd_qt, to_qt_integral, tpoly


def _monic_transform(g):
    # h(y) = a^(n-1) g(y/a) for g = sum g_i x^i, a = g_n
    n = g.degree()
    a = g.lc()
    coeffs = [g[i] * a ** (n - 1 - i) for i in range(n)] + [1]
    return Poly(coeffs)


def _strip_zero(f):
    k = 0
    while k < len(f.coeffs) and not f.coeffs[k]:
        k += 1
    return k, Poly(f.coeffs[k:])


def rational_roots(f):
    """Distinct rational roots of f in Q[x], sorted ascending."""
    if not f:
        raise ValueError("roots of the zero polynomial")
    k, f = _strip_zero(f)
    roots = [Fraction(0)] if k else []
    if f.degree() <= 0:
        return sorted(roots)
    g = rational_primitive(f)[1]
    sq = gcd_rational(g, g.derivative())
    if sq.degree() > 0:
        g = rational_primitive(divmod(g, sq)[0])[1]
    if g.degree() == 1:
        return sorted(roots + [Fraction(-g[0], g[1])])
    a = g.lc()
    h = _monic_transform(g)
    n = h.degree()
    bound = 1 + max(abs(c) for c in h.coeffs[:-1])
    p = 2
    while True:
        p = next_prime(p)
        hb = modp.reduce(h.coeffs, p)
        if len(hb) - 1 == n and modp.is_squarefree(hb, p):
            break
    modulus = p
    lifted = modp.roots(hb, p)
    dh = h.derivative()
    while modulus <= 2 * bound:
        new_mod = modulus * modulus
        lifted = [(r - h(r) * pow(dh(r), -1, new_mod)) % new_mod for r in lifted]
        modulus = new_mod
    for r in lifted:
        if r > modulus // 2:
            r -= modulus
        if h(r) == 0:
            roots.append(Fraction(r, a))
    return sorted(set(roots))


# -- power series helpers (lists of Fractions, truncated at length prec) ---

def _ser_mul(a, b, prec):
    out = [Fraction(0)] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for j, y in enumerate(b[:prec - i]):
                out[i + j] += x * y
    return out


def _ser_inv(a, prec):
    inv0 = 1 / Fraction(a[0])
    out = [inv0] + [Fraction(0)] * (prec - 1)
    for k in range(1, prec):
        s = sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * inv0
    return out


def _ser_eval(coeff_series, y, prec):
    acc = [Fraction(0)] * prec
    for c in reversed(coeff_series):
        acc = _ser_mul(acc, y, prec)
        for i, v in enumerate(c[:prec]):
            acc[i] += v
    return acc


def _tpoly_to_series(c, t0, prec):
    shifted = list(tpoly(c).shift(t0).coeffs)
    shifted = [Fraction(v) for v in shifted[:prec]]
    return shifted + [Fraction(0)] * (prec - len(shifted))


def qt_rational_roots(f):
    """Distinct roots in Q(t) of f in Q(t)[x] (coefficients RatFunc or t-Poly).

    Sorted by (degree of numerator, degree of denominator, coefficients).
    """
    if not f:
        raise ValueError("roots of the zero polynomial")
    f = f.map(RatFunc.coerce)
    k, f = _strip_zero(f)
    roots = [RatFunc(0)] if k else []
    if f.degree() <= 0:
        return roots
    sq = gcd_qt(f, f.derivative())
    if sq.degree() > 0:
        f = divmod(f, sq)[0]
    g = to_qt_integral(f)[1]
    if g.degree() == 1:
        roots.append(RatFunc(-g[0], g[1]))
        return _sort_qt(roots)
    a = tpoly(g.lc())
    h = _monic_transform(g).map(tpoly)
    n = h.degree()
    bound = max(-(-h[i].degree() // (n - i)) for i in range(n) if h[i]) if any(
        h[i] for i in range(n)) else 0
    prec = max(bound, 0) + 1
    dh = h.derivative()
    for t0 in _specializations():
        special = Poly([c(Fraction(t0)) for c in h.coeffs])
        if special.degree() == n and gcd_rational(special, special.derivative()).degree() == 0:
            break
    base_roots = rational_roots(special)
    hs = [_tpoly_to_series(c, t0, prec) for c in h.coeffs]
    dhs = [_tpoly_to_series(c, t0, prec) for c in dh.coeffs]
    for r0 in base_roots:
        y = [Fraction(r0)] + [Fraction(0)] * (prec - 1)
        done = 1
        while done < prec:
            done = min(2 * done, prec)
            val = _ser_eval(hs, y, prec)
            der = _ser_eval(dhs, y, prec)
            corr = _ser_mul(val, _ser_inv(der, prec), prec)
            y = [u - v for u, v in zip(y, corr)]
        # y is k(t0 + s) as a series in s; shift back to t
        cand = Poly(y).shift(Fraction(-t0))
        if not _eval_tpoly(h, cand):
            roots.append(RatFunc(cand, a))
    return _sort_qt(list({r: None for r in roots}))


def _eval_tpoly(h, k):
    acc = Poly()
    for c in reversed(h.coeffs):
        acc = acc * k + tpoly(c)
    return acc


def _specializations():
    yield 0
    for i in count(1):
        yield i
        yield -i


def _sort_qt(roots):
    def key(r):
        return (r.num.degree(), r.den.degree(), [Fraction(c) for c in r.num.coeffs],
                [Fraction(c) for c in r.den.coeffs])
    return sorted(roots, key=key)


def root_multiplicity(f, r):
    """Multiplicity of the root r (in the coefficient field) of f."""
    lin = Poly((-r, 1))
    m = 0
    while f:
        q, rem = divmod(f, lin)
        if rem:
            break
        f = q
        m += 1
    return m


def roots_with_multiplicity(f):
    """[(root, multiplicity)] over Q or Q(t), plus the cofactor without those roots."""
    if is_rational_poly(f):
        rs = rational_roots(f)
    else:
        rs = qt_rational_roots(f)
        f = f.map(RatFunc.coerce)
    out = []
    for r in rs:
        m = root_multiplicity(f, r)
        f = divmod(f, Poly((-r, 1)) ** m)[0]
        out.append((r, m))
    return out, f
