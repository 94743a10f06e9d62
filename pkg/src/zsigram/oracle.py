"""Ground-truth checks on ramification claims through preimage polynomials.

A place p (not dividing the leading coefficient) is unramified in the
splitting field of f whenever f stays squarefree modulo p.  That direction
is exact and is the one the cross-check relies on; the discriminant test is
an independent second route (a resultant instead of a gcd).
"""

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import INF, _numerator_minus, iterate_pair
from .errors import CertificateInapplicable
from .exact import FactorBudget, Poly, RatFunc, discriminant, int_factor, modp, next_prime
from .exact.poly import ext_gcd, gcd_rational, rational_primitive
from .exact.ratfunc import to_qt_integral
from .fields import QQ, QQt
from .places import Place, _monic_tidy


@dataclass(frozen=True)
class PreimagePolynomial:
    level: int
    poly: Poly
    field: object
    squarefree: bool


def preimage_poly(phi, beta, n):
    """Primitive numerator of phi^n(x) - beta."""
    if n < 1:
        raise ValueError("level must be at least 1")
    K = phi.field
    beta = beta if beta is INF else K.coerce(beta)
    p, q = iterate_pair(phi, n)
    F = _numerator_minus(K, p, q, beta)
    if K is QQ:
        F = rational_primitive(F.map(Fraction))[1]
        F = F.map(int)
    else:
        F = to_qt_integral(K.to_field_poly(F))[1]
    return PreimagePolynomial(n, F, K, _is_squarefree(F, K))


def _is_squarefree(F, K):
    if F.degree() < 1:
        return True
    if K is QQ:
        # a squarefree reduction of the same degree settles it
        p = 2
        for _ in range(30):
            if F.lc() % p:
                red = modp.reduce(F.coeffs, p)
                if modp.is_squarefree(red, p):
                    return True
            p = next_prime(p)
        f = F.map(Fraction)
        return gcd_rational(f, f.derivative()).degree() == 0
    from .exact.ratfunc import gcd_qt
    f = K.to_field_poly(F)
    return gcd_qt(f, f.derivative()).degree() == 0


# -- unramified certificates -----------------------------------------------------

class _ZeroDivisor(Exception):
    def __init__(self, factor):
        self.factor = factor


def _tmod(c, m):
    c = c if isinstance(c, Poly) else Poly.const(c)
    return divmod(c.map(Fraction), m)[1]


def _xtrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _xrem(a, b, m):
    """a mod b over Q[t]/(m); raises _ZeroDivisor when lc(b) is not invertible."""
    h, s, _ = ext_gcd(b[-1], m)
    if h.degree() > 0:
        raise _ZeroDivisor(h)
    inv = s
    a = list(a)
    while len(a) >= len(b):
        c = _tmod(a[-1] * inv, m)
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = _tmod(a[shift + i] - c * bc, m)
        a.pop()
        _xtrim(a)
    return a


def _residue_gcd_degree(F, m):
    a = _xtrim([_tmod(c, m) for c in F.coeffs])
    b = _xtrim([_tmod(c * i, m) for i, c in enumerate(F.coeffs)][1:])
    while b:
        a, b = b, _xrem(a, b, m)
    return len(a) - 1


def residue_squarefree(F, m):
    """[(modulus, squarefree?)] for F over Q[t]/(m), splitting m at zero divisors."""
    m = _monic_tidy(m.map(Fraction))
    out = []
    work = [m]
    while work:
        mod = work.pop()
        try:
            out.append((mod, _residue_gcd_degree(F, mod) == 0))
        except _ZeroDivisor as z:
            g = _monic_tidy(z.factor)
            work += [g, _monic_tidy(mod.exquo(g))]
    out.sort(key=lambda r: (r[0].degree(), tuple(r[0].coeffs)))
    return out


def _place_of(place):
    if isinstance(place, Place):
        return place
    return Place.prime(place) if isinstance(place, int) else Place.poly(place)


def unramified_certificate(f, place):
    """True iff f stays squarefree modulo the place (which then does not ramify)."""
    place = _place_of(place)
    F = f.poly if isinstance(f, PreimagePolynomial) else f
    if place.kind == "prime":
        p = place.value
        lc = Fraction(F.lc())
        if lc.numerator % p == 0 or lc.denominator % p == 0:
            raise CertificateInapplicable("p does not divide lc(f)")
        return modp.is_squarefree(modp.reduce(F.map(Fraction).coeffs, p), p)
    if place.kind != "poly":
        raise CertificateInapplicable("finite place")
    lc = F.lc()
    lc = lc if isinstance(lc, Poly) else Poly.const(lc)
    if gcd_rational(lc.map(Fraction), place.value.map(Fraction)).degree() > 0:
        raise CertificateInapplicable("place does not divide lc(f)")
    return all(ok for _, ok in residue_squarefree(F, place.value))


def ramified_everywhere(f, place):
    """For a possibly composite place of Q(t): non-squarefree modulo every factor."""
    place = _place_of(place)
    F = f.poly if isinstance(f, PreimagePolynomial) else f
    if place.kind == "prime":
        return not unramified_certificate(f, place)
    return not any(ok for _, ok in residue_squarefree(F, place.value))


def disc_prime_superset(f, budget=None, hints=()):
    """Budgeted factorization of disc(f) over Q; every ramified prime outside lc(f) divides it."""
    F = f.poly if isinstance(f, PreimagePolynomial) else f
    D = discriminant(F.map(Fraction))
    D = Fraction(D)
    return int_factor(D.numerator * D.denominator, budget or FactorBudget(), hints)


def divides_discriminant(f, place):
    """p | disc(f), computed by a resultant (mod p over Q, exactly over Q(t))."""
    place = _place_of(place)
    F = f.poly if isinstance(f, PreimagePolynomial) else f
    if place.kind == "prime":
        return discriminant(F.map(Fraction), modulus=place.value) == 0
    D = RatFunc.coerce(discriminant(F.map(RatFunc.coerce)))
    g = gcd_rational(D.num, place.value)
    return g.degree() == place.value.degree()


# -- cross-checks --------------------------------------------------------------------

def check_claim(phi, beta_j, n, place, mode="one-level"):
    """'pass' when the oracle confirms 'ramified at n, unramified below'."""
    below = n - 1 if mode == "one-level" else n - 2
    try:
        for m in range(1, below + 1):
            if not unramified_certificate(preimage_poly(phi, beta_j, m), place):
                return "fail"
        fn = preimage_poly(phi, beta_j, n)
        if not ramified_everywhere(fn, place):
            return "fail"
        if not divides_discriminant(fn, place):
            return "fail"
    except CertificateInapplicable:
        return "fail"
    return "pass"


def cross_check(phi, witnesses, oracle_max):
    """{level: pass | fail | out-of-range} for each witness."""
    out = {}
    for w in witnesses:
        if w.level > oracle_max:
            out[w.level] = "out-of-range"
        else:
            out[w.level] = check_claim(phi, w.beta_j, w.level, w.place, w.mode)
    return out
