"""Bad places, the two ramification criteria and the level-by-level search.

Quantities attached to a point y and a target b are handled through the
numerator of y - b in lowest terms (``diff_numerator``): a place divides it
exactly when v(y - b) > 0, with the usual reading v(inf - b) > 0 iff v(b) < 0.
Over Q numerators are positive integers, over Q(t) monic polynomials in t.
"""

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import gcd

from .dynamics import (
    INF, beta_levels, critical_points, grand_orbit_partition, hom_resultant,
    is_exceptional, is_postcritically_finite, orbit, wandering_class_count,
)
from .errors import HypothesisError, PreconditionError, RestrictionError
from .exact import FactorBudget, Poly, RatFunc, int_factor, rational_roots, tpoly
from .exact.poly import gcd_rational, int_content, yun
from .fields import QQ, QQt, field_of
from .heights import DEFAULT_PRECISION, _ln, canonical_height, tuple_height
from .places import (
    Place, _monic_tidy, good_reduction, ring_valuation, separable_reduction, valuation,
)


# -- ring helpers ------------------------------------------------------------------

def _norm(K, a):
    if K is QQ:
        return abs(int(a))
    a = tpoly(a)
    return _monic_tidy(a) if a else a


def _is_unit(K, a):
    return a == 1 if K is QQ else a.degree() == 0


def _gcd(K, a, b):
    if K is QQ:
        return gcd(a, b)
    g = gcd_rational(a, b)
    return _monic_tidy(g) if g else g


def _div(K, a, b):
    return a // b if K is QQ else _monic_tidy(a.exquo(b))


def _strip(K, a, e):
    """Remove from a every prime factor it shares with e."""
    if not e:
        return a
    while True:
        g = _gcd(K, a, e)
        if _is_unit(K, g):
            return a
        a = _div(K, a, g)


def _radical(K, a):
    if K is QQ:
        raise TypeError("integer radicals need factoring")
    g = gcd_rational(a, a.derivative())
    return _monic_tidy(a.exquo(g))


def _lcm_poly(a, b):
    return _monic_tidy((a * b).exquo(gcd_rational(a, b)))


def diff_numerator(K, y, b):
    """Normalized numerator of y - b (0 when y = b)."""
    if y is INF and b is INF:
        return _norm(K, 0)
    if y is INF:
        return _norm(K, K.split(b)[1])
    if b is INF:
        return _norm(K, K.split(y)[1])
    return _norm(K, K.split(K.coerce(y) - K.coerce(b))[0])


def _exponent_one_part(f):
    """Product of the multiplicity-one factors of a polynomial in t."""
    out = Poly.const(1)
    for g, i in yun(f.map(Fraction), gcd_rational):
        if i == 1:
            out = out * g
    return _monic_tidy(out)


def poly_places(f):
    """[(Place, exponent)] for a nonzero polynomial in t: linear places from
    rational roots, then the squarefree parts of what remains."""
    f = _monic_tidy(tpoly(f))
    out = []
    for r in rational_roots(f):
        lin = Poly([-r, 1])
        e = 0
        while True:
            q, rem = divmod(f, lin)
            if rem:
                break
            f, e = q, e + 1
        out.append((Place.poly(lin, "irreducible"), e))
    if f.degree() > 0:
        for g, i in yun(f.map(Fraction), gcd_rational):
            out.append((Place.poly(g), i))
    out.sort(key=lambda pe: pe[0].sort_key())
    return out


class _Factorer:
    """Cached place decompositions of ring elements."""

    def __init__(self, K, budget=None):
        self.K = K
        self.budget = budget or FactorBudget()
        self._cache = {}

    def __call__(self, a):
        """([(Place, exponent)], partial_cofactor) for a nonzero ring element."""
        key = a
        if key in self._cache:
            return self._cache[key]
        if self.K is QQ:
            res = int_factor(a, self.budget)
            pl = [(Place.prime(p), e) for p, e in res.factors]
            out = (pl, res.cofactor)
        else:
            out = (poly_places(a), None)
        self._cache[key] = out
        return out


# -- the bad set -----------------------------------------------------------------

@dataclass
class BadPrimeSet:
    field: object
    generators: tuple
    places: tuple
    reasons: dict
    partial: bool = False

    def contains(self, place):
        return bool(self.reasons_for(place))

    def reasons_for(self, place):
        out = []
        for g, why in self.generators:
            if _place_divides(place, g) and why not in out:
                out.append(why)
        return out


def _place_divides(place, a):
    if place.kind == "prime":
        return a % place.value == 0
    if place.kind == "degree":
        return False
    if place.status == "uncertified":
        return gcd_rational(place.value, tpoly(a)).degree() > 0
    return ring_valuation(a, place) > 0


def _rational_critical(phi):
    crit = critical_points(phi)
    if not crit.all_rational():
        raise RestrictionError("irrational critical points")
    return crit.point_list()


def bad_prime_set(phi, levels, budget=None):
    """The finite set S of places where the ramification criteria are not controlled."""
    K = phi.field
    crit = _rational_critical(phi)
    gens = []

    def add(a, why):
        a = _norm(K, a)
        if not a:
            raise AssertionError(f"zero quantity in the bad set ({why})")
        if not _is_unit(K, a):
            gens.append((a, why))

    add(hom_resultant(phi), "bad-reduction")
    if K is QQ:
        from .dynamics import wronskian
        add(int_content(wronskian(phi)), "inseparable")
    betas = levels.betas
    for b in betas:
        if b is not INF and b:
            num, den = K.split(b)
            add(num, "v(beta_j)!=0")
            add(den, "v(beta_j)!=0")
    for i, b in enumerate(betas):
        for c in betas[i + 1:]:
            add(diff_numerator(K, b, c), "divides beta_j-beta_k")
    for g in crit:
        orb = orbit(phi, g, max(levels.t - 1, 0))
        for m in range(levels.t):
            for b in betas:
                add(diff_numerator(K, orb[m], b), "divides phi^m(gamma)-beta_j (m<t)")
    fac = _Factorer(K, budget)
    reasons = {}
    partial = False
    for a, why in gens:
        pl, cof = fac(a)
        if cof not in (None, 1):
            partial = True
        for p, _ in pl:
            reasons.setdefault(p, [])
            if why not in reasons[p]:
                reasons[p].append(why)
    places = tuple(sorted(reasons))
    return BadPrimeSet(K, tuple(gens), places, reasons, partial)


# -- Proposition-style criteria ----------------------------------------------------------

@dataclass(frozen=True)
class CandidateSet:
    places: tuple
    partial: bool
    cofactors: tuple = ()
    degenerate: bool = False


def necessary_candidates(phi, beta, n, budget=None, S=None):
    """Places dividing a numerator of phi^m(alpha) - beta, 1 <= m <= n, alpha critical.

    Every place ramifying in the level-n splitting field with good separable
    reduction lies here; S members are dropped when S is given.
    """
    K = phi.field
    beta = beta if beta is INF else K.coerce(beta)
    fac = _Factorer(K, budget)
    found = set()
    cofs = []
    degenerate = False
    for a in _rational_critical(phi):
        orb = orbit(phi, a, n)
        for m in range(1, n + 1):
            N = diff_numerator(K, orb[m], beta)
            if not N:
                degenerate = True
                continue
            pl, cof = fac(N)
            if cof not in (None, 1):
                cofs.append(cof)
            found.update(p for p, _ in pl)
    if S is not None:
        found = {p for p in found if not S.contains(p)}
    return CandidateSet(tuple(sorted(found)), bool(cofs), tuple(sorted(set(cofs))), degenerate)


def sufficient_test(phi, alpha, beta_j, n, place, S=None):
    """True iff v(phi^n(alpha) - beta_j) = 1, which forces ramification at level n."""
    K = phi.field
    if S is not None and S.contains(place):
        raise PreconditionError("place not in S", f"{place} lies in the bad set")
    if not good_reduction(phi, place):
        raise PreconditionError("good reduction", f"no good reduction at {place}")
    if not separable_reduction(phi, place):
        raise PreconditionError("separable reduction", f"inseparable reduction at {place}")
    if beta_j is INF:
        raise PreconditionError("v(beta) >= 0", "beta_j = inf")
    beta_j = K.coerce(beta_j)
    if beta_j and valuation(beta_j, place) < 0:
        raise PreconditionError("v(beta) >= 0")
    alpha = alpha if alpha is INF else K.coerce(alpha)
    if alpha not in critical_points(phi).point_list():
        raise PreconditionError("alpha critical", f"{K.fmt(alpha)} is not a critical point")
    y = orbit(phi, alpha, n)[n]
    if y is INF:
        raise PreconditionError("phi^n(alpha) != inf")
    return valuation(y - beta_j, place) == 1


# -- the witness search ------------------------------------------------------------------

@dataclass(frozen=True)
class RamWitness:
    level: int
    place: Place
    alpha: object
    j: int
    beta_j: object
    valuation: int
    mode: str
    exclusions: tuple
    shortcut: tuple = ()
    certificate: object = None


@dataclass(frozen=True)
class WitnessResult:
    level: int
    status: str
    witness: RamWitness = None
    cofactors: tuple = ()


class SearchTables:
    """Orbits of the critical points and their numerators against each beta_j."""

    def __init__(self, phi, levels, max_level, budget=None):
        self.phi = phi
        self.K = phi.field
        self.levels = levels
        self.crit = _rational_critical(phi)
        self.orbits = {g: orbit(phi, g, max_level) for g in self.crit}
        self.factor = _Factorer(self.K, budget)
        self._num = {}

    def value(self, g, m):
        return self.orbits[g][m]

    def num(self, g, m, j):
        key = (g, m, j)
        if key not in self._num:
            self._num[key] = diff_numerator(self.K, self.orbits[g][m], self.levels.betas[j])
        return self._num[key]

    def excluded(self, upto):
        out = []
        for g in self.crit:
            for m in range(1, upto + 1):
                for k in range(len(self.levels.betas)):
                    out.append((g, m, k, self.num(g, m, k)))
        return out


def _shortcut(classes, alpha):
    if not classes:
        return ()
    for c in classes:
        if alpha in c.members:
            return tuple(w for w in c.witnesses if alpha in (w[0], w[1]))
    return ()


def new_prime_witness(phi, levels, n, budget=None, S=None, tables=None, mode="one-level",
                      previous=(), classes=None):
    """Search for a place ramifying at level n but not below (or not below n-1
    in "two-level" mode)."""
    K = phi.field
    if S is None:
        S = bad_prime_set(phi, levels, budget)
    if tables is None:
        tables = SearchTables(phi, levels, n, budget)
    upto = n - 1 if mode == "one-level" else n - 2
    excl = tables.excluded(upto)
    strip_by = [e for *_, e in excl if e] + [g for g, _ in S.generators]
    if mode != "one-level":
        strip_by += [p.value for p in previous]
    cands = []
    cofs = []
    for a in tables.crit:
        if tables.value(a, n) is INF:
            continue
        for j in range(len(levels.betas)):
            N = tables.num(a, n, j)
            if not N:
                continue
            if K is QQ:
                R = N
                for e in strip_by:
                    R = _strip(K, R, e)
                if R == 1:
                    continue
                pl, cof = tables.factor(R)
                if cof != 1:
                    cofs.append(cof)
                for p, _ in pl:
                    if N % (p.value ** 2) == 0 or S.contains(p):
                        continue
                    if good_reduction(phi, p) and separable_reduction(phi, p):
                        cands.append((p, a, j, None))
            else:
                g1 = _exponent_one_part(N)
                for e in strip_by:
                    g1 = _strip(K, g1, e)
                if g1.degree() < 1:
                    continue
                roots = rational_roots(g1)
                place = (Place.poly(Poly([-roots[0], 1]), "irreducible") if roots
                         else Place.poly(g1))
                cands.append((place, a, j, g1))
    if not cands:
        status = "partial" if cofs else "none-found"
        return WitnessResult(n, status, None, tuple(sorted(set(cofs))))
    cands.sort(key=lambda c: (c[0].sort_key(), K.sort_key(c[1]), c[2]))
    place, a, j, cert = cands[0]
    exclusions = tuple((g, m, k, _excl_valuation(K, e, place, cert))
                       for g, m, k, e in excl)
    w = RamWitness(n, place, a, j + 1, levels.betas[j], 1, mode, exclusions,
                   _shortcut(classes, a), cert)
    return WitnessResult(n, "witness", w)


def _excl_valuation(K, e, place, cert):
    if not e:
        return float("inf")
    if place.kind == "poly" and place.status == "uncertified":
        return 0 if gcd_rational(cert, e).degree() == 0 else 1
    return ring_valuation(e, place)


def verify_witness(phi, levels, S, w):
    """Recompute every valuation behind a witness from scratch."""
    K = phi.field
    betas = levels.betas
    crit = _rational_critical(phi)
    place = w.place
    upto = w.level - 1 if w.mode == "one-level" else w.level - 2
    if w.alpha not in crit or betas[w.j - 1] != w.beta_j:
        return False
    y = orbit(phi, w.alpha, w.level)[w.level]
    if y is INF:
        return False
    N = diff_numerator(K, y, w.beta_j)
    excluded = [diff_numerator(K, orbit(phi, g, upto)[m], b)
                for g in crit for m in range(1, upto + 1) for b in betas]
    if any(not e for e in excluded):
        return False
    if K is QQt and w.certificate is not None:
        g = w.certificate
        q, r = divmod(N, g)
        if r or gcd_rational(g, q).degree() > 0:
            return False
        if any(gcd_rational(g, e).degree() > 0 for e in excluded):
            return False
        if any(gcd_rational(g, s).degree() > 0 for s, _ in S.generators):
            return False
        if gcd_rational(g, place.value).degree() != place.value.degree():
            return False
        if place.status == "uncertified":
            return place.value == _monic_tidy(g)
    if S.contains(place):
        return False
    if not (good_reduction(phi, place) and separable_reduction(phi, place)):
        return False
    if ring_valuation(N, place) != 1:
        return False
    return all(ring_valuation(e, place) <= 0 for e in excluded)


# -- lemma sums ----------------------------------------------------------------------

@dataclass
class LemmaRow:
    level: int
    z_sum: Decimal
    v1_sum: Decimal
    y_sums: dict
    scale: Decimal
    partial: dict = field(default_factory=dict)

    def ratio(self, v):
        if self.scale is None or self.scale <= 0:
            return None
        if not v:
            return Decimal(0)
        with localcontext() as ctx:
            ctx.prec = 20
            return v / self.scale


@dataclass
class LemmaTable:
    alpha: object
    height: object
    rows: list
    classes: list


def _class_label(K, c):
    return "{" + ",".join(K.fmt(m) for m in c.members) + "}"


def lemma_sums(phi, alpha, levels, n_max, budget=None, S=None, classes=None, tables=None,
               precision=DEFAULT_PRECISION):
    """Sums of N_p over Z(n), the valuation-one set and the Y(i, j) sets, n <= n_max."""
    K = phi.field
    if S is None:
        S = bad_prime_set(phi, levels, budget)
    if tables is None:
        tables = SearchTables(phi, levels, n_max, budget)
    if classes is None:
        classes = grand_orbit_partition(phi)
    d = phi.degree
    est = canonical_height(phi, alpha, iterations=max(n_max, 8), precision=precision)
    nb = len(levels.betas)
    rows = []
    for n in range(1, n_max + 1):
        with localcontext() as ctx:
            ctx.prec = precision
            scale = est.value * d ** n
        partial = {}
        if K is QQ:
            z, zp = _q_z_set(tables, S, alpha, n, nb)
            v1, vp = _q_v1_set(tables, alpha, n, nb)
            zs, vs = _sum_logs(z, precision), _sum_logs(v1, precision)
            ys = {}
            for c in classes:
                tot, part = Decimal(0), False
                for i in range(1, n):
                    for j in range(nb):
                        ps = set()
                        for g in c.members:
                            N = tables.num(g, i, j)
                            if N:
                                pl, cof = tables.factor(N)
                                part = part or cof != 1
                                ps.update(p.value for p, _ in pl)
                        with localcontext() as ctx:
                            ctx.prec = precision
                            tot += _sum_logs(ps, precision)
                ys[_class_label(K, c)] = tot
                if part:
                    partial["y" + _class_label(K, c)] = True
            if zp:
                partial["z"] = True
            if vp:
                partial["v1"] = True
        else:
            zs = Decimal(_qt_z_poly(tables, S, alpha, n, nb).degree())
            v1 = Poly.const(1)
            for j in range(nb):
                N = tables.num(alpha, n, j)
                if N:
                    v1 = _lcm_poly(v1, _exponent_one_part(N))
            vs = Decimal(v1.degree())
            ys = {}
            for c in classes:
                tot = 0
                for i in range(1, n):
                    for j in range(nb):
                        u = Poly.const(1)
                        for g in c.members:
                            N = tables.num(g, i, j)
                            if N:
                                u = _lcm_poly(u, _radical(K, N))
                        tot += u.degree()
                ys[_class_label(K, c)] = Decimal(tot)
        rows.append(LemmaRow(n, zs, vs, ys, scale, partial))
    return LemmaTable(alpha, est, rows, [_class_label(K, c) for c in classes])


def _sum_logs(primes, precision):
    with localcontext() as ctx:
        ctx.prec = precision
        return sum((_ln(p, precision) for p in sorted(primes)), Decimal(0))


def _q_z_set(tables, S, alpha, n, nb):
    out, partial = set(), False
    for i in range(nb):
        Nn = tables.num(alpha, n, i)
        if not Nn:
            continue
        for m in range(1, n):
            for j in range(nb):
                Nm = tables.num(alpha, m, j)
                G = gcd(Nn, Nm)
                if G > 1:
                    pl, cof = tables.factor(G)
                    partial = partial or cof != 1
                    out.update(p.value for p, _ in pl if not S.contains(p))
    return out, partial


def _q_v1_set(tables, alpha, n, nb):
    out, partial = set(), False
    for j in range(nb):
        N = tables.num(alpha, n, j)
        if not N:
            continue
        pl, cof = tables.factor(N)
        partial = partial or cof != 1
        out.update(p.value for p, _ in pl if N % (p.value ** 2))
    return out, partial


def _qt_z_poly(tables, S, alpha, n, nb):
    K = tables.K
    u = Poly.const(1)
    for i in range(nb):
        Nn = tables.num(alpha, n, i)
        if not Nn:
            continue
        for m in range(1, n):
            for j in range(nb):
                G = _gcd(K, Nn, tables.num(alpha, m, j))
                if G.degree() > 0:
                    u = _lcm_poly(u, _radical(K, G))
    for g, _ in S.generators:
        u = _strip(K, u, g)
    return u


# -- radicals and the abc toolkit --------------------------------------------------------

@dataclass(frozen=True)
class RadicalResult:
    places: tuple
    rad: Decimal
    partial: bool = False


def _coprime_base(polys):
    base = []
    todo = [p for p in polys if p.degree() > 0]
    while todo:
        a = todo.pop()
        if a.degree() < 1:
            continue
        for i, b in enumerate(base):
            g = gcd_rational(a, b)
            if g.degree() > 0:
                base.pop(i)
                todo += [_monic_tidy(g), _monic_tidy(b.exquo(g)), _monic_tidy(a.exquo(g))]
                break
        else:
            base.append(_monic_tidy(a))
    return base


def _base_places(b):
    """Split a squarefree basis element into linear places and one remainder place."""
    out = []
    for r in rational_roots(b):
        lin = Poly([-r, 1])
        out.append(Place.poly(lin, "irreducible"))
        b = b.exquo(lin)
    if b.degree() > 0:
        out.append(Place.poly(b, "irreducible" if b.degree() <= 3 else "uncertified"))
    return out


def radical_and_Iset(values, K=None, budget=None, precision=DEFAULT_PRECISION):
    """Places where the valuations of the z_i are not all equal, and the sum of their norms."""
    values = list(values)
    if not values or any(not v for v in values):
        raise ValueError("radical of a tuple with a zero entry")
    K = K or (QQt if any(field_of(v) is QQt or isinstance(v, Poly) for v in values) else QQ)
    if K is QQ:
        fr = [Fraction(v) for v in values]
        fac = _Factorer(QQ, budget)
        primes, partial = set(), False
        for f in fr:
            for a in (f.numerator, f.denominator):
                if abs(a) > 1:
                    pl, cof = fac(abs(a))
                    partial = partial or cof != 1
                    primes.update(p for p, _ in pl)
        places = tuple(sorted(p for p in primes
                              if len({valuation(f, p) for f in fr}) > 1))
        return RadicalResult(places, _sum_logs([p.value for p in places], precision), partial)
    rf = [RatFunc.coerce(v) for v in values]
    parts = []
    for r in rf:
        for a in (r.num, r.den):
            if a.degree() > 0:
                parts += [g for g, _ in yun(a.map(Fraction), gcd_rational)]
    places = []
    for b in _coprime_base(parts):
        pl = Place.poly(b, "uncertified")
        if len({_vpi(r, pl.value) for r in rf}) > 1:
            places += _base_places(b)
    places.sort()
    deg = Place.degree_place()
    if len({valuation(r, deg) for r in rf}) > 1:
        places.append(deg)
    rad = sum((p.norm() for p in places), Decimal(0))
    return RadicalResult(tuple(places), rad)


def _vpi(r, pi):
    from .places import _vpi_poly
    return _vpi_poly(r.num, pi) - _vpi_poly(r.den, pi)


@dataclass(frozen=True)
class AbcResult:
    height: Decimal
    rad: Decimal
    holds: object
    triple: tuple


def abc_check(a, b, c, K=None, budget=None, precision=DEFAULT_PRECISION):
    """h(a, b, c) against rad(a, b, c); over Q(t) asserts h <= rad - 1."""
    vals = [a, b, c]
    K = K or (QQt if any(field_of(v) is QQt or isinstance(v, Poly) for v in vals) else QQ)
    if K is QQ:
        a, b, c = (Fraction(v) for v in vals)
        if a + b != c:
            raise ValueError("a + b != c")
        if not (a and b and c):
            raise ValueError("abc triple with a zero entry")
        h = tuple_height([a, b, c], QQ, precision)
        r = radical_and_Iset([a, b, c], QQ, budget, precision)
        return AbcResult(h, r.rad, None, (a, b, c))
    a, b, c = (RatFunc.coerce(v) for v in vals)
    if a + b != c:
        raise ValueError("a + b != c")
    if not (a and b and c):
        raise ValueError("abc triple with a zero entry")
    den = a.den * b.den * c.den
    polys = [(r.num * den).exquo(r.den) for r in (a, b, c)]
    g = gcd_rational(gcd_rational(polys[0], polys[1]), polys[2])
    polys = [p.exquo(g) for p in polys]
    if all(p.degree() == 0 for p in polys):
        raise PreconditionError("not all constant", "abc triple is constant after removing the gcd")
    h = tuple_height(polys, QQt)
    r = radical_and_Iset(polys, QQt)
    return AbcResult(h, r.rad, h <= r.rad - 1, tuple(polys))


# -- the report ---------------------------------------------------------------------

@dataclass
class RunConfig:
    levels: int = 8
    trial_limit: int = 100_000
    rho_iterations: int = 200_000
    step_bound: int = 64
    oracle_max: int = None
    precision: int = 50
    grand_orbit_bound: int = 8
    max_t: int = 6

    @property
    def budget(self):
        return FactorBudget(self.trial_limit, self.rho_iterations)

    def oracle_level(self, phi):
        if self.oracle_max is not None:
            return self.oracle_max
        cap = 64 if phi.field is QQ else 16
        n = 0
        while phi.degree ** (n + 1) <= cap:
            n += 1
        return n


@dataclass
class ZsigmondyReport:
    phi: object
    beta: object
    config: RunConfig
    hypotheses: dict
    levels: object
    bad_set: BadPrimeSet
    results: list
    cumulative: list
    oracle: dict
    lemma: LemmaTable
    valid: bool


def check_hypotheses(phi, beta, config=None):
    """Gate on d >= 2, not-PCF and non-exceptional beta; returns the outcomes."""
    config = config or RunConfig()
    K = phi.field
    if phi.degree < 2:
        raise HypothesisError("degree must be at least 2")
    beta = beta if beta is INF else K.coerce(beta)
    if is_exceptional(phi, beta):
        raise HypothesisError(f"{K.fmt(beta)} is exceptional")
    pcf = is_postcritically_finite(phi, config.step_bound)
    if pcf.status == "PCF":
        raise HypothesisError("map is postcritically finite")
    if pcf.reason == "irrational critical points":
        raise RestrictionError("irrational critical points")
    classes = grand_orbit_partition(phi, bound=config.grand_orbit_bound,
                                    step_bound=config.step_bound)
    g = wandering_class_count(classes)
    sep = "certified" if all(c.separation == "certified" for c in classes) else "up-to-bound"
    out = {
        "degree": phi.degree,
        "pcf": pcf.status,
        "pcf_witness": None if pcf.witness is None else K.fmt(pcf.witness),
        "exceptional": False,
        "wandering_grand_orbits": g,
        "grand_orbit_bound_holds": g <= phi.degree - 1,
        "grand_orbit_separation": sep,
        "conditional_on": "abc" if K is QQ else "none (Mason-Stothers)",
    }
    if K is QQt:
        out["isotrivial_candidate"] = phi.is_isotrivial_candidate()
    return out, classes


def zsigmondy_report(phi, beta, config=None):
    """Witness search at levels 1..N_max with oracle cross-checks and lemma sums."""
    from .oracle import cross_check
    config = config or RunConfig()
    if config.levels < 2:
        raise PreconditionError("levels >= 2")
    K = phi.field
    beta = beta if beta is INF else K.coerce(beta)
    hyp, classes = check_hypotheses(phi, beta, config)
    lv = beta_levels(phi, beta, config.step_bound, config.max_t)
    budget = config.budget
    S = bad_prime_set(phi, lv, budget)
    tables = SearchTables(phi, lv, config.levels, budget)
    results, seen, cumulative = [], [], []
    for n in range(1, config.levels + 1):
        r = new_prime_witness(phi, lv, n, budget, S, tables, classes=classes)
        if r.witness is None and n >= 3:
            r2 = new_prime_witness(phi, lv, n, budget, S, tables, mode="two-level",
                                   previous=seen, classes=classes)
            if r2.witness is not None:
                r = r2
        if r.witness is not None and r.witness.place not in seen:
            seen.append(r.witness.place)
        results.append(r)
        cumulative.append(len(seen))
    oracle = cross_check(phi, [r.witness for r in results if r.witness],
                         config.oracle_level(phi))
    alpha = _max_height_critical(phi, tables.crit, config.precision)
    lemma = lemma_sums(phi, alpha, lv, config.levels, budget, S, classes, tables,
                       config.precision)
    valid = all(s != "fail" for s in oracle.values())
    return ZsigmondyReport(phi, beta, config, hyp, lv, S, results, cumulative, oracle,
                           lemma, valid)


def _max_height_critical(phi, crit, precision):
    best, hb = None, None
    for g in crit:
        h = canonical_height(phi, g, iterations=8, precision=precision).value
        if hb is None or h > hb:
            best, hb = g, h
    return best
