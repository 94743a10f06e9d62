"""Places of Q and Q(t), valuations, reduction tests and Newton polygons."""

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .dynamics import INF, critical_points, degree_cap, evaluate, hom_resultant, iterate_pair
from .dynamics import wronskian
from .errors import PreconditionError
from .exact import Poly, RatFunc, is_prime, is_proven_prime, modp, rational_roots, tpoly
from .exact.poly import gcd_rational, rational_primitive
from .fields import QQ, QQt
from .heights import _ln

_IRREDUCIBILITY_PRIMES = 40


@dataclass(frozen=True)
class Place:
    """A rational prime, a monic polynomial in t, or the degree place of Q(t).

    ``status`` records how the place was certified: "proven" or "probable"
    for primes, "irreducible" or "uncertified" (squarefree, irreducibility
    not established) for polynomials, "degree" for the place at infinity.
    """

    kind: str
    value: object
    status: str

    @classmethod
    def prime(cls, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls("prime", p, "proven" if is_proven_prime(p) else "probable")

    @classmethod
    def poly(cls, pi, status=None):
        pi = tpoly(pi)
        if pi.degree() < 1:
            raise ValueError("a place of Q(t) needs a nonconstant polynomial")
        pi = _monic_tidy(pi)
        return cls("poly", pi, status or irreducibility_status(pi))

    @classmethod
    def degree_place(cls):
        return cls("degree", None, "degree")

    @property
    def field(self):
        return QQ if self.kind == "prime" else QQt

    @property
    def certified(self):
        return self.status in ("proven", "probable", "irreducible", "degree")

    def norm(self, precision=50):
        """N_p: log p for primes, deg(pi) for polynomials, 1 for the degree place."""
        if self.kind == "prime":
            return _ln(self.value, precision)
        if self.kind == "poly":
            return Decimal(self.value.degree())
        return Decimal(1)

    def sort_key(self):
        if self.kind == "prime":
            return (0, self.value)
        if self.kind == "poly":
            return (1, self.value.degree(), tuple(Fraction(c) for c in self.value.coeffs))
        return (2,)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.kind == "prime":
            return str(self.value)
        if self.kind == "poly":
            return self.value.to_str("t")
        return "deg"

    def __hash__(self):
        return hash((self.kind, self.value))

    def __eq__(self, other):
        return isinstance(other, Place) and (self.kind, self.value) == (other.kind, other.value)


def _monic_tidy(f):
    lc = Fraction(f.lc())
    return Poly([_tidy(Fraction(c) / lc) for c in f.coeffs])


def _tidy(v):
    return v.numerator if v.denominator == 1 else v


def irreducibility_status(pi):
    """'irreducible' when proven over Q, 'uncertified' otherwise; raises if reducible."""
    pi = tpoly(pi)
    n = pi.degree()
    if n == 1:
        return "irreducible"
    roots = rational_roots(pi)
    if roots:
        raise ValueError(f"{pi.to_str('t')} has the rational root {roots[0]}")
    if n <= 3:
        return "irreducible"
    g = gcd_rational(pi, pi.derivative())
    if g.degree() > 0:
        raise ValueError("place polynomial is not squarefree")
    F = rational_primitive(pi.map(Fraction))[1]
    p = 2
    for _ in range(_IRREDUCIBILITY_PRIMES):
        p = _next_prime(p)
        if F.lc() % p == 0:
            continue
        red = modp.reduce(F.coeffs, p)
        if modp.is_irreducible(red, p):
            return "irreducible"
    return "uncertified"


def _next_prime(p):
    from .exact import next_prime
    return next_prime(p)


# -- valuations -------------------------------------------------------------

def _vp_int(n, p):
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vpi_poly(f, pi):
    v = 0
    f = tpoly(f)
    while True:
        q, r = divmod(f, pi)
        if r:
            return v
        f = q
        v += 1


def valuation(z, place):
    """v_p(z); math.inf for z = 0 (and for the point INF, -inf is never returned)."""
    if z is INF:
        raise ValueError("valuation of the point at infinity")
    if not z:
        return math.inf
    if place.kind == "prime":
        z = Fraction(z) if not isinstance(z, RatFunc) else z.constant_value()
        return _vp_int(z.numerator, place.value) - _vp_int(z.denominator, place.value)
    z = RatFunc.coerce(z)
    if place.kind == "degree":
        return z.den.degree() - z.num.degree()
    return _vpi_poly(z.num, place.value) - _vpi_poly(z.den, place.value)


def ring_valuation(a, place):
    """Valuation of a ring element (int or polynomial in t)."""
    return valuation(a if place.kind == "prime" else RatFunc(tpoly(a)), place)


def _require_finite(place):
    if place.kind == "degree":
        raise PreconditionError("finite place", "reduction tests need a finite place")


def good_reduction(phi, place):
    """Coefficients integral, reduced degree kept and the reduced pair coprime."""
    _require_finite(place)
    if place.field is not phi.field:
        raise PreconditionError("place of the base field")
    for c in phi.num.coeffs + phi.den.coeffs:
        if c and ring_valuation(c, place) < 0:
            return False
    return ring_valuation(hom_resultant(phi), place) == 0


def separable_reduction(phi, place):
    """Good reduction whose reduced Wronskian is not identically zero."""
    if not good_reduction(phi, place):
        raise PreconditionError("good reduction", f"no good reduction at {place}")
    if place.kind == "poly":
        return True
    return bool(modp.reduce(wronskian(phi).coeffs, place.value))


def good_separable_reduction(phi, place):
    return good_reduction(phi, place) and separable_reduction(phi, place)


# -- Newton polygons -----------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    segments: tuple

    def first_segment(self):
        return self.segments[0] if self.segments else None


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f, place):
    """Lower convex hull of (i, v(a_i)) over the nonzero coefficients of f."""
    if not f:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(i, valuation(c, place)) for i, c in enumerate(f.coeffs) if c]
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    segs = tuple((Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0])
                 for a, b in zip(hull, hull[1:]))
    return NewtonPolygon(tuple(hull), segs)


@dataclass(frozen=True)
class NewtonTrace:
    polynomial: Poly
    polygon: NewtonPolygon
    ell: int
    shape_ok: bool


def shifted_preimage_poly(phi, alpha, beta, n):
    """p_n(X + alpha) - beta q_n(X + alpha), in the field's coefficients."""
    K = phi.field
    p, q = iterate_pair(phi, n)
    fp, fq = K.to_field_poly(p), K.to_field_poly(q)
    if K is QQ:
        fp, fq = fp.map(Fraction), fq.map(Fraction)
    a = K.coerce(alpha)
    fp, fq = fp.shift(a), fq.shift(a)
    if beta is INF:
        return fq
    c, e = K.split(beta)
    return fp.scale(e) - fq.scale(c)


def newton_trace(phi, alpha, beta, n, place, max_degree=256):
    """The polygon used in the sufficient criterion: first segment (0,1) -> (l,0), l > 1."""
    if alpha is INF:
        return None
    if phi.degree ** n > min(max_degree, degree_cap()):
        return None
    F = shifted_preimage_poly(phi, alpha, beta, n)
    poly = newton_polygon(F, place)
    v = poly.vertices
    ell = v[1][0] - v[0][0] if len(v) > 1 else 0
    ok = len(v) > 1 and v[0] == (0, 1) and v[1][1] == 0 and ell > 1
    return NewtonTrace(F, poly, ell, ok)


def is_critical(phi, alpha):
    return any(c == alpha for c, _ in critical_points(phi).points)


def reduce_point(x, p):
    """Reduction of a p-integral rational point modulo p, or INF."""
    if x is INF:
        return INF
    x = Fraction(x)
    if x.denominator % p == 0:
        return INF
    return x.numerator * pow(x.denominator, -1, p) % p


def reduced_evaluate(phi, xbar, p):
    """Evaluate the reduction of phi at a point of P^1(F_p)."""
    num, den = phi.hom_num(), phi.hom_den()
    a, b = (1, 0) if xbar is INF else (xbar, 1)
    P = sum(c * pow(a, i, p) * pow(b, len(num) - 1 - i, p) for i, c in enumerate(num)) % p
    Q = sum(c * pow(a, i, p) * pow(b, len(den) - 1 - i, p) for i, c in enumerate(den)) % p
    if Q == 0:
        return INF
    return P * pow(Q, -1, p) % p


def evaluate_then_reduce(phi, x, p):
    return reduce_point(evaluate(phi, x), p)
