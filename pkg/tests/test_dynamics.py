from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from zsigram.dynamics import (
    INF, beta_levels, classify_orbit, critical_points, evaluate, grand_orbit_partition,
    is_exceptional, is_postcritically_finite, iterate_map, iterate_pair, iterate_value,
    normalize, orbit, wandering_class_count,
)
from zsigram.errors import HypothesisError, PreconditionError, RestrictionError
from zsigram.exact import Poly, RatFunc
from zsigram.fields import QQt

from conftest import T, X, qt_x

small = st.integers(-6, 6)


def maps():
    def build(num, den):
        f, g = Poly(num), Poly(den)
        if not g:
            return None
        try:
            return normalize(f, g)
        except (PreconditionError, ZeroDivisionError):
            return None
    return st.builds(build, st.lists(small, min_size=1, max_size=4),
                     st.lists(small, min_size=1, max_size=3)).filter(
        lambda m: m is not None and m.degree >= 2)


points = st.one_of(st.just(INF), st.fractions(max_denominator=20).filter(lambda q: abs(q) < 20))


def test_normalize_examples():
    phi = normalize(X**2 * 2 + 2, 2)
    assert phi.num == X**2 + 1 and phi.den == 1 and phi.degree == 2
    phi = normalize(X**2 - 1, X - 1)
    assert phi.num == X + 1 and phi.degree == 1
    x = qt_x()
    phi = normalize(x**3 + x.scale(RatFunc(T)), Poly([RatFunc(T)]))
    assert phi.field is QQt and phi.degree == 3
    assert phi.to_str() == "(x^3 + t*x)/(t)"


def test_normalize_rejects_constants():
    with pytest.raises(PreconditionError):
        normalize(Poly([3]), Poly([2]))


def test_iterate_pair_examples():
    p, q = iterate_pair(normalize(X**2), 3)
    assert p == X**8 and q == 1
    p, q = iterate_pair(normalize(X**2 + 1), 2)
    assert p == X**4 + 2 * X**2 + 2 and q == 1
    inv = normalize(1, X)
    p, q = iterate_pair(inv, 2)
    assert p == X and q == 1


def test_evaluate_examples():
    phi = normalize(X**2 + 1)
    assert evaluate(phi, INF) is INF
    assert evaluate(phi, 2) == 5
    assert evaluate(normalize(1, X), 0) is INF
    assert evaluate(normalize(1, X), INF) == 0
    assert orbit(phi, 0, 5) == [0, 1, 2, 5, 26, 677]


def test_critical_points_examples():
    c = critical_points(normalize(X**2 + 3))
    assert c.points == ((0, 1), (INF, 1)) and c.all_rational()
    c = critical_points(normalize(X**3 - 3 * X))
    assert c.points == ((-1, 1), (1, 1), (INF, 2))
    c = critical_points(normalize(X**3 + X))
    assert c.points == ((INF, 2),)
    assert c.residual == 3 * X**2 + 1


def test_classify_orbit_examples():
    r = classify_orbit(normalize(X**2 - 1), 0)
    assert r.classification == "periodic" and r.period == 2 and r.tail == 0
    r = classify_orbit(normalize(X**2 + 1), 0)
    assert r.classification == "wandering-certified"
    assert r.certificate_height > r.height_bound
    r = classify_orbit(normalize(X**2), 1)
    assert r.classification == "periodic" and r.period == 1
    r = classify_orbit(normalize(X**2 - 2), 1)
    assert r.classification == "preperiodic" and r.tail == 1


def test_classification_indices_reverify():
    phi = normalize(X**2 - 2)
    for x in (0, 1, -1, 2, Fraction(1, 2)):
        r = classify_orbit(phi, x)
        if r.is_preperiodic():
            m, n = r.tail, r.tail + r.period
            assert iterate_value(phi, x, n) == iterate_value(phi, x, m)


def test_pcf_examples():
    for f in (X**2, X**2 - 1, X**2 - 2):
        assert is_postcritically_finite(normalize(f)).status == "PCF"
    r = is_postcritically_finite(normalize(X**2 + 1))
    assert r.status == "not-PCF" and r.witness == 0
    assert is_postcritically_finite(normalize(X**3 - 2)).status == "not-PCF"
    assert is_postcritically_finite(normalize(X**3 + X)).status == "undetermined"


def test_exceptional_examples():
    assert is_exceptional(normalize(X**2 + 1), INF)
    assert is_exceptional(normalize(X**3), 0)
    assert is_exceptional(normalize(X**3), INF)
    assert is_exceptional(normalize(1, X**2), 0)
    assert not is_exceptional(normalize(X**2 + 1), 0)
    assert not is_exceptional(normalize((X**2 + 1), X), INF)


def test_grand_orbits():
    classes = grand_orbit_partition(normalize(X**2 + 1))
    assert [c.members for c in classes] == [[0], [INF]]
    assert wandering_class_count(classes) == 1
    classes = grand_orbit_partition(normalize(X**2 - 1), points=[0, -1])
    assert len(classes) == 1
    a, b, m, n = classes[0].witnesses[0]
    phi = normalize(X**2 - 1)
    assert iterate_value(phi, a, m) == iterate_value(phi, b, n)
    classes = grand_orbit_partition(normalize(X**3 - 3 * X), bound=6)
    assert len(classes) == 3
    assert all(c.separation == "certified" for c in classes)


def test_beta_levels():
    assert beta_levels(normalize(X**2 + 1), 0).betas == (0,)
    lv = beta_levels(normalize(X**2), 1)
    assert lv.t == 1 and lv.betas == (-1,)
    with pytest.raises(RestrictionError):
        beta_levels(normalize(X**2 - 2), 2)
    with pytest.raises(HypothesisError):
        beta_levels(normalize(X**2 + 1), INF)
    x = qt_x()
    lv = beta_levels(normalize(x**2 + Poly([RatFunc(T)])), 0)
    assert lv.t == 0 and lv.betas == (RatFunc(0),)


@given(maps())
def test_riemann_hurwitz_count(phi):
    c = critical_points(phi)
    assert sum(m for _, m in c.points) + max(c.residual.degree(), 0) == 2 * phi.degree - 2


@given(maps(), points)
def test_evaluate_matches_iterate(phi, x):
    assume(phi.degree ** 2 <= 64)
    two = iterate_map(phi, 2)
    assert evaluate(two, x) == evaluate(phi, evaluate(phi, x))
    assert iterate_value(phi, x, 2) == evaluate(two, x)


@given(maps())
def test_normalize_idempotent(phi):
    again = normalize(phi.num, phi.den)
    assert again == phi
