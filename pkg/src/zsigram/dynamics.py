"""Rational maps of the projective line over Q and Q(t).

A map is stored as a coprime pair (num, den) of polynomials with ring
coefficients (integers, or polynomials in t); the homogeneous pair is
P(X, Y) = Y^d num(X/Y), Q(X, Y) = Y^d den(X/Y) with d = max degree.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import HypothesisError, PreconditionError, ResourceLimitError, RestrictionError
from .exact import Poly, RatFunc, poly_gcd, roots_with_multiplicity, tpoly
from .exact.poly import rational_primitive
from .exact.ratfunc import to_qt_integral, tpoly_content
from .fields import INF, QQ, QQt, field_of

DEFAULT_DEGREE_CAP = 4096
DEFAULT_BIT_CAP = 1 << 22


def degree_cap():
    """Largest materialized iterate degree; ZSIGRAM_DEGREE_CAP overrides."""
    value = os.environ.get("ZSIGRAM_DEGREE_CAP")
    return int(value) if value else DEFAULT_DEGREE_CAP


class UndeterminedError(ResourceLimitError):
    """A bounded search ended without deciding; raise the bounds to retry."""


@dataclass(frozen=True, eq=False)
class RationalFunction:
    field: object
    num: Poly
    den: Poly
    degree: int

    def __eq__(self, other):
        return (isinstance(other, RationalFunction) and self.field is other.field
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.field.name, self.num, self.den))

    def hom_num(self):
        return [self.num[i] for i in range(self.degree + 1)]

    def hom_den(self):
        return [self.den[i] for i in range(self.degree + 1)]

    def is_polynomial(self):
        return self.den.degree() == 0

    def is_isotrivial_candidate(self):
        """Q(t) map whose normalized coefficients are all constant in t."""
        if self.field is not QQt:
            return False
        return all(tpoly(c).degree() <= 0 for c in self.num.coeffs + self.den.coeffs)

    def field_num(self):
        return self.field.to_field_poly(self.num)

    def field_den(self):
        return self.field.to_field_poly(self.den)

    def to_str(self):
        n = self.num.to_str("x", "t")
        if self.den == 1:
            return n
        return f"({n})/({self.den.to_str('x', 't')})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r}, field={self.field.name})"


# -- normalization -----------------------------------------------------------

def _ring_form(f, K):
    """Scale a field-coefficient polynomial to ring coefficients (any scalar)."""
    if K is QQ:
        return rational_primitive(f.map(Fraction))[1] if f else Poly()
    if not f:
        return Poly()
    return to_qt_integral(f.map(RatFunc.coerce))[1]


def normalize(num, den=None, field=None):
    """Build a RationalFunction from a raw numerator/denominator pair."""
    if den is None:
        den = Poly.const(1)
    if not isinstance(num, Poly):
        num = Poly.const(num)
    if not isinstance(den, Poly):
        den = Poly.const(den)
    K = field or (QQt if QQt in (field_of(num), field_of(den)) else QQ)
    if not den:
        raise ZeroDivisionError("rational map with zero denominator")
    if not num:
        raise PreconditionError("degree >= 1", "constant map (degree 0)")
    fn, fd = K.to_field_poly(num), K.to_field_poly(den)
    if K is QQ:
        fn, fd = fn.map(Fraction), fd.map(Fraction)
    g = poly_gcd(fn, fd)
    if g.degree() > 0:
        fn, fd = divmod(fn, g)[0], divmod(fd, g)[0]
    # scale the pair jointly to coprime ring coefficients
    scale = _joint_scale(fn, fd, K)
    fn, fd = fn.map(lambda c: c * scale), fd.map(lambda c: c * scale)
    if K is QQ:
        n, d = fn.map(lambda c: c.numerator), fd.map(lambda c: c.numerator)
        cont = QQ.ring_content(n.coeffs + d.coeffs)
        n, d = n.map(lambda c: c // cont), d.map(lambda c: c // cont)
        if d.lc() < 0:
            n, d = -n, -d
    else:
        n = fn.map(lambda c: c.num)
        d = fd.map(lambda c: c.num)
        cont = tpoly_content(Poly(n.coeffs + d.coeffs))
        if cont.degree() > 0:
            n, d = n.map(lambda c: c.exquo(cont)), d.map(lambda c: c.exquo(cont))
        lead = Fraction(d.lc().lc())
        n = n.map(lambda c: c.map(lambda v: Fraction(v) / lead))
        d = d.map(lambda c: c.map(lambda v: Fraction(v) / lead))
        n, d = n.map(_tidy_tpoly), d.map(_tidy_tpoly)
    deg = max(n.degree(), d.degree())
    if deg < 1:
        raise PreconditionError("degree >= 1", "constant map (degree 0)")
    return RationalFunction(K, n, d, deg)


def _tidy_tpoly(c):
    return Poly([int(v) if Fraction(v).denominator == 1 else Fraction(v) for v in c.coeffs])


def _joint_scale(fn, fd, K):
    if K is QQ:
        return Fraction(lcm(*(c.denominator for c in fn.coeffs + fd.coeffs)))
    den = Poly.const(1)
    for c in fn.coeffs + fd.coeffs:
        c = RatFunc.coerce(c)
        den = (den * c.den).exquo(poly_gcd(den, c.den))
    return RatFunc(den)


# -- homogeneous evaluation and iteration ------------------------------------

def _hom_eval(coeffs, a, b, bpows):
    acc = coeffs[-1]
    d = len(coeffs) - 1
    for i in range(d - 1, -1, -1):
        acc = acc * a + coeffs[i] * bpows[d - i]
    return acc


def _powers(b, d):
    out = [1]
    for _ in range(d):
        out.append(out[-1] * b)
    return out


def point_pair(K, x):
    """Homogeneous coordinates (a, b) of a point, coprime in the ring."""
    if x is INF:
        return K.ring_one(), 0
    return K.split(x)


def evaluate(phi, x):
    """phi(x) for a point x (field element or INF)."""
    K = phi.field
    if x is not INF:
        x = K.coerce(x)
    a, b = point_pair(K, x)
    bp = _powers(b, phi.degree)
    P = _hom_eval(phi.hom_num(), a, b, bp)
    Q = _hom_eval(phi.hom_den(), a, b, bp)
    if not Q:
        return INF
    return K.make(P, Q)


def _check_size(K, x):
    if x is INF:
        return
    a, b = K.split(x)
    if K is QQ:
        if max(a.bit_length(), b.bit_length()) > DEFAULT_BIT_CAP:
            raise ResourceLimitError("iterate exceeds the size cap")
    elif max(a.degree(), b.degree()) > degree_cap():
        raise ResourceLimitError("iterate degree exceeds the degree cap")


def orbit(phi, x, n):
    """[x, phi(x), ..., phi^n(x)]."""
    K = phi.field
    pts = [x if x is INF else K.coerce(x)]
    for _ in range(n):
        y = evaluate(phi, pts[-1])
        _check_size(K, y)
        pts.append(y)
    return pts


def iterate_value(phi, x, n):
    return orbit(phi, x, n)[-1]


def _strip_joint_content(K, p, q):
    vals = [c for c in p.coeffs + q.coeffs]
    if K is QQ:
        g = QQ.ring_content(vals)
        if g > 1:
            p, q = p.map(lambda c: c // g), q.map(lambda c: c // g)
        return p, q
    g = tpoly_content(Poly(vals))
    if g.degree() > 0:
        p, q = p.map(lambda c: tpoly(c).exquo(g)), q.map(lambda c: tpoly(c).exquo(g))
    return p, q


def iterate_pairs(phi, m):
    """Yield (k, p_k, q_k) for k = 1..m; dehomogenized forms of (P_k, Q_k)."""
    if m < 1:
        raise PreconditionError("m >= 1")
    d = phi.degree
    cap = degree_cap()
    if d ** m > cap:
        raise ResourceLimitError(f"iterate degree {d}^{m} exceeds the degree cap {cap}")
    K = phi.field
    one = K.ring_one()
    p = Poly((0, one))
    q = Poly((one,))
    num, den = phi.hom_num(), phi.hom_den()
    for k in range(1, m + 1):
        qp = [Poly((one,))]
        for _ in range(d):
            qp.append(qp[-1] * q)
        newp = _hom_compose(num, p, qp)
        newq = _hom_compose(den, p, qp)
        p, q = _strip_joint_content(K, newp, newq)
        yield k, p, q


def _hom_compose(coeffs, p, qp):
    d = len(coeffs) - 1
    acc = Poly.const(coeffs[d]) if coeffs[d] else Poly()
    for i in range(d - 1, -1, -1):
        acc = acc * p
        if coeffs[i]:
            acc = acc + qp[d - i].scale(coeffs[i])
    return acc


def iterate_pair(phi, m):
    """(p_m, q_m): dehomogenized homogeneous iterate of formal degree d^m."""
    out = None
    for _, p, q in iterate_pairs(phi, m):
        out = (p, q)
    return out


def iterate_map(phi, m):
    p, q = iterate_pair(phi, m)
    return RationalFunction(phi.field, p, q, phi.degree ** m)


# -- critical points ----------------------------------------------------------

@dataclass(frozen=True)
class CriticalData:
    points: tuple
    residual: Poly

    def all_rational(self):
        return self.residual.degree() <= 0

    def point_list(self):
        return [p for p, _ in self.points]


def wronskian(phi):
    return phi.num.derivative() * phi.den - phi.num * phi.den.derivative()


def critical_points(phi):
    """Rational critical points with multiplicities and the irrational residual."""
    d = phi.degree
    if d < 2:
        raise PreconditionError("degree >= 2")
    K = phi.field
    W = K.to_field_poly(wronskian(phi))
    roots, cof = roots_with_multiplicity(W if K is QQt else W.map(Fraction))
    pts = sorted(roots, key=lambda rm: K.sort_key(rm[0]))
    pts = [(K.coerce(r), m) for r, m in pts]
    inf_mult = 2 * d - 2 - W.degree()
    if inf_mult > 0:
        pts.append((INF, inf_mult))
    residual = _ring_form(cof, K) if cof.degree() > 0 else Poly.const(K.ring_one())
    return CriticalData(tuple(pts), residual)


# -- orbits ---------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitRecord:
    point: object
    trajectory: tuple
    classification: str
    tail: int = None
    period: int = None
    bound: int = None
    certificate_index: int = None
    certificate_height: object = None
    height_bound: object = None

    @property
    def witness(self):
        """(m, n) with phi^n(x) = phi^m(x), for (pre)periodic points."""
        if self.period is None:
            return None
        return self.tail, self.tail + self.period

    def is_preperiodic(self):
        return self.classification in ("periodic", "preperiodic")

    def is_wandering(self):
        return self.classification == "wandering-certified"


def classify_orbit(phi, x, step_bound=64, height_bound=None):
    """Cycle detection with a height-escape certificate for wandering points."""
    from .heights import comparison_constant, naive_height
    if step_bound < 1:
        raise PreconditionError("step_bound >= 1")
    K = phi.field
    if height_bound is None:
        height_bound = comparison_constant(phi) + 1
    x = x if x is INF else K.coerce(x)
    seen = {}
    traj = []
    y = x
    for n in range(step_bound + 1):
        if y in seen:
            m = seen[y]
            traj.append(y)
            kind = "periodic" if m == 0 else "preperiodic"
            return OrbitRecord(x, tuple(traj), kind, tail=m, period=n - m)
        seen[y] = n
        traj.append(y)
        h = naive_height(y, K)
        if h > height_bound:
            return OrbitRecord(x, tuple(traj), "wandering-certified",
                               certificate_index=n, certificate_height=h,
                               height_bound=height_bound)
        if n < step_bound:
            y = evaluate(phi, y)
            _check_size(K, y)
    return OrbitRecord(x, tuple(traj), "undetermined", bound=step_bound,
                       height_bound=height_bound)


@dataclass(frozen=True)
class PCFResult:
    status: str
    witness: object = None
    records: tuple = ()
    reason: str = ""

    @property
    def is_pcf(self):
        return self.status == "PCF"


def is_postcritically_finite(phi, step_bound=64):
    crit = critical_points(phi)
    if not crit.all_rational():
        return PCFResult("undetermined", reason="irrational critical points")
    records = tuple(classify_orbit(phi, c, step_bound) for c, _ in crit.points)
    for r in records:
        if r.is_wandering():
            return PCFResult("not-PCF", witness=r.point, records=records)
    if all(r.is_preperiodic() for r in records):
        return PCFResult("PCF", records=records)
    return PCFResult("undetermined", records=records, reason="step bound reached")


# -- exceptional points ------------------------------------------------------------

def fiber_poly(phi, y):
    """Ring polynomial whose roots (with infinity at degree deficit) are phi^-1(y)."""
    K = phi.field
    if y is INF:
        return phi.den
    c, e = K.split(y)
    return phi.num.scale(e) - phi.den.scale(c)


def _single_preimage(phi, y):
    """The unique point of phi^-1(y) if the fiber is one totally ramified point."""
    K = phi.field
    F = fiber_poly(phi, y)
    d = phi.degree
    if F.degree() == 0:
        return INF
    if F.degree() < d:
        return None
    f = K.to_field_poly(F)
    if K is QQ:
        f = f.map(Fraction)
    lc = f.lc()
    gamma = -f[d - 1] / (lc * d)
    lin = Poly((-gamma, K.coerce(1)))
    if f != (lin ** d).scale(lc):
        return None
    return K.coerce(gamma)


def is_exceptional(phi, beta):
    """True iff the grand orbit of beta is finite (at most two points)."""
    if phi.degree < 2:
        raise PreconditionError("degree >= 2")
    K = phi.field
    beta = beta if beta is INF else K.coerce(beta)
    gamma = _single_preimage(phi, beta)
    if gamma is None:
        return False
    return _single_preimage(phi, gamma) == beta


# -- grand orbits ---------------------------------------------------------------

@dataclass
class GrandOrbitClass:
    members: list
    witnesses: list = field(default_factory=list)
    wandering: bool = False
    classification: str = "preperiodic"
    separation: str = "certified"
    m_g: object = None


def _find_relation(oa, ob):
    pos = {}
    for n, y in enumerate(ob):
        pos.setdefault(y, n)
    best = None
    for m, y in enumerate(oa):
        if y in pos:
            cand = (m, pos[y])
            if best is None or sum(cand) < sum(best):
                best = cand
    return best


def grand_orbit_partition(phi, points=None, bound=8, step_bound=64):
    """Partition points (default: rational critical points) into grand orbits."""
    K = phi.field
    if points is None:
        crit = critical_points(phi)
        if not crit.all_rational():
            raise RestrictionError("grand orbits need rational critical points")
        points = crit.point_list()
    points = [p if p is INF else K.coerce(p) for p in points]
    records = {p: classify_orbit(phi, p, step_bound) for p in points}
    orbits = {}
    for p in points:
        r = records[p]
        orbits[p] = list(r.trajectory) if r.is_preperiodic() else orbit(phi, p, bound)
    parent = {p: p for p in points}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    witnesses = []
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            rel = _find_relation(orbits[a], orbits[b])
            if rel is not None:
                witnesses.append((a, b, rel[0], rel[1]))
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups = {}
    for p in points:
        groups.setdefault(find(p), []).append(p)
    classes = []
    for members in groups.values():
        members.sort(key=K.sort_key)
        recs = [records[m] for m in members]
        wand = any(r.is_wandering() for r in recs)
        if wand:
            kind = "wandering"
        elif all(r.is_preperiodic() for r in recs):
            kind = "preperiodic"
        else:
            kind = "undetermined"
        mem = set(members)
        wit = [w for w in witnesses if w[0] in mem]
        classes.append(GrandOrbitClass(members, wit, wand, kind))
    classes.sort(key=lambda c: K.sort_key(c.members[0]))
    for c in classes:
        for o in classes:
            if o is c:
                continue
            pre = {c.classification, o.classification}
            if pre == {"preperiodic"} or pre == {"preperiodic", "wandering"}:
                continue
            c.separation = "up-to-bound"
    return classes


def wandering_class_count(classes):
    return sum(1 for c in classes if c.wandering)


# -- the beta_j tower ----------------------------------------------------------------

@dataclass(frozen=True)
class BetaLevels:
    t: int
    betas: tuple


class _OrbitOracle:
    """Decides 'periodic' and 'postcritical' for rational points, or raises."""

    def __init__(self, phi, crit_points, step_bound):
        from .heights import comparison_constant
        self.phi = phi
        self.step_bound = step_bound
        self.C = comparison_constant(phi)
        self.records = [classify_orbit(phi, g, step_bound) for g in crit_points]
        for r in self.records:
            if r.classification == "undetermined":
                raise UndeterminedError(
                    f"critical orbit of {phi.field.fmt(r.point)} undetermined "
                    f"within {step_bound} steps")

    def is_periodic(self, y):
        r = classify_orbit(self.phi, y, self.step_bound)
        if r.classification == "undetermined":
            raise UndeterminedError(f"orbit of {self.phi.field.fmt(y)} undetermined")
        return r.classification == "periodic"

    def is_postcritical(self, y):
        from .heights import naive_height
        K = self.phi.field
        hy = naive_height(y, K)
        for r in self.records:
            if r.is_preperiodic():
                if y in r.trajectory[1:]:
                    return True
                continue
            z = r.point
            for _ in range(self.step_bound):
                z = evaluate(self.phi, z)
                _check_size(K, z)
                if z == y:
                    return True
                if naive_height(z, K) > hy + 2 * self.C:
                    break
            else:
                raise UndeterminedError("postcritical check undetermined")
        return False

    def is_clean(self, y):
        return not self.is_periodic(y) and not self.is_postcritical(y)


def _numerator_minus(K, p, q, beta):
    if beta is INF:
        return q
    c, e = K.split(beta)
    return p.scale(e) - q.scale(c)


def beta_levels(phi, beta, step_bound=64, max_t=6):
    """Smallest t >= 0 such that every point of phi^-t(beta) minus phi^-(t-1)(beta)
    is neither periodic nor postcritical, with those points."""
    K = phi.field
    beta = beta if beta is INF else K.coerce(beta)
    if is_exceptional(phi, beta):
        raise HypothesisError("beta is exceptional")
    crit = critical_points(phi)
    if not crit.all_rational():
        raise RestrictionError("irrational critical points")
    crit_pts = crit.point_list()
    oracle = _OrbitOracle(phi, crit_pts, step_bound)
    if oracle.is_clean(beta):
        if beta is INF:
            raise RestrictionError("beta_j = infinity is not supported")
        return BetaLevels(0, (beta,))
    one = K.ring_one()
    prev_F = _numerator_minus(K, Poly((0, one)), Poly((one,)), beta)
    for t, p, q in iterate_pairs(phi, max_t):
        F = _numerator_minus(K, p, q, beta)
        field_F = K.to_field_poly(F) if K is QQt else F.map(Fraction)
        field_prev = K.to_field_poly(prev_F) if K is QQt else prev_F.map(Fraction)
        g = poly_gcd(field_F, field_F.derivative())
        sqf = divmod(field_F, g)[0]
        common = poly_gcd(sqf, field_prev) if field_prev else sqf
        new = divmod(sqf, common)[0]
        roots, residual = roots_with_multiplicity(new)
        new_pts = [K.coerce(r) for r, _ in roots]
        inf_here = iterate_value(phi, INF, t) == beta
        inf_before = iterate_value(phi, INF, t - 1) == beta
        if inf_here and not inf_before:
            new_pts.append(INF)
        prev_F = F
        # a critical beta_j would put phi^0(gamma) - beta_j = 0 into the bad set
        if any(y in crit_pts or not oracle.is_clean(y) for y in new_pts):
            continue
        if residual.degree() > 0:
            raise RestrictionError(f"irrational beta_j needed at level t = {t}")
        if INF in new_pts:
            raise RestrictionError("beta_j = infinity is not supported")
        return BetaLevels(t, tuple(sorted(new_pts, key=K.sort_key)))
    raise UndeterminedError(f"no admissible t <= {max_t}")


def hom_resultant(phi):
    """Res(P, Q) of the homogeneous pair, both of formal degree d (a ring element)."""
    from .exact import resultant
    K = phi.field
    d = phi.degree
    p, q = K.to_field_poly(phi.num), K.to_field_poly(phi.den)
    if K is QQ:
        p, q = p.map(Fraction), q.map(Fraction)
    if p.degree() == d:
        r = resultant(p, q) * p.lc() ** (d - q.degree())
    else:
        r = resultant(q, p) * q.lc() ** (d - p.degree())
        if d % 2:
            r = -r
    if K is QQ:
        r = Fraction(r)
        if r.denominator != 1:
            raise ArithmeticError("non-integral homogeneous resultant")
        return r.numerator
    r = RatFunc.coerce(r)
    if not r.is_poly():
        raise ArithmeticError("non-integral homogeneous resultant")
    return _tidy_tpoly(r.num)


def reversed_pair(phi):
    """(P(1, y), Q(1, y)) as ring polynomials in y."""
    return Poly(list(reversed(phi.hom_num()))), Poly(list(reversed(phi.hom_den())))
