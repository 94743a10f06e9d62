from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zsigram.dynamics import INF, UndeterminedError, beta_levels, normalize, orbit
from zsigram.errors import HypothesisError, PreconditionError, RestrictionError
from zsigram.exact import Poly, RatFunc
from zsigram.places import Place, good_reduction, separable_reduction, valuation
from zsigram.ramification import (
    RunConfig, SearchTables, abc_check, bad_prime_set, lemma_sums, necessary_candidates,
    new_prime_witness, radical_and_Iset, sufficient_test, verify_witness, zsigmondy_report,
)

from conftest import T, X, qt_x


def ln(n):
    with localcontext() as ctx:
        ctx.prec = 60
        return Decimal(n).ln()


def xpt():
    x = qt_x()
    return normalize(x**2 + Poly([RatFunc(T)]))


def setup(phi, beta):
    lv = beta_levels(phi, beta)
    return lv, bad_prime_set(phi, lv)


# -- the bad set --------------------------------------------------------------------

def test_bad_set_examples():
    _, S = setup(normalize(X**2 + 1), 0)
    assert [p.value for p in S.places] == [2]
    assert S.reasons[Place.prime(2)] == ["inseparable"]
    _, S = setup(normalize(X**3 - 2), 0)
    assert [p.value for p in S.places] == [3]
    _, S = setup(xpt(), 0)
    assert S.places == ()


def test_bad_set_reasons_reverify():
    phi = normalize(X**2 - Fraction(3, 4))
    lv, S = setup(phi, 2)
    for p, why in S.reasons.items():
        for reason in why:
            if reason == "bad-reduction":
                assert not good_reduction(phi, p)
            elif reason == "inseparable":
                # reasons accumulate; separability is only defined under good reduction
                assert not good_reduction(phi, p) or not separable_reduction(phi, p)
            elif reason == "v(beta_j)!=0":
                assert any(b and valuation(b, p) != 0 for b in lv.betas)
    assert S.contains(Place.prime(2))
    assert S.reasons[Place.prime(2)] == ["bad-reduction", "inseparable", "v(beta_j)!=0"]


def test_bad_set_with_preimage_levels():
    # beta = 1 is periodic for x^2; the tower restarts at beta_1 = -1
    lv, S = setup(normalize(X**2), 1)
    assert lv.t == 1 and lv.betas == (-1,)
    assert [p.value for p in S.places] == [2]


# -- necessary and sufficient criteria -------------------------------------------------

def test_necessary_candidates_examples():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    c = necessary_candidates(phi, 0, 3, S=S)
    assert [p.value for p in c.places] == [5] and not c.partial
    assert [p.value for p in necessary_candidates(phi, 0, 3).places] == [2, 5]
    c = necessary_candidates(normalize(X**3 - 2), 0, 1)
    assert [p.value for p in c.places] == [2]
    c = necessary_candidates(xpt(), RatFunc(0), 2)
    assert [p.value for p in c.places] == [T, T + 1]


def test_sufficient_examples():
    assert sufficient_test(normalize(X**3 - 2), 0, 0, 1, Place.prime(2))
    phi = normalize(X**2 + 1)
    assert sufficient_test(phi, 0, 0, 3, Place.prime(5))
    assert sufficient_test(phi, 0, 0, 4, Place.prime(13))
    assert not sufficient_test(phi, 0, 0, 4, Place.prime(5))


def test_sufficient_preconditions_named():
    phi = normalize(X**2 + 1)
    with pytest.raises(PreconditionError) as e:
        sufficient_test(phi, 0, 0, 3, Place.prime(2))
    assert e.value.hypothesis == "separable reduction"
    with pytest.raises(PreconditionError) as e:
        sufficient_test(normalize(X**2 + Fraction(1, 3)), 0, 0, 2, Place.prime(3))
    assert e.value.hypothesis == "good reduction"
    with pytest.raises(PreconditionError) as e:
        sufficient_test(phi, 0, Fraction(1, 5), 3, Place.prime(5))
    assert e.value.hypothesis == "v(beta) >= 0"
    with pytest.raises(PreconditionError) as e:
        sufficient_test(phi, INF, 0, 3, Place.prime(5))
    assert e.value.hypothesis == "phi^n(alpha) != inf"
    with pytest.raises(PreconditionError) as e:
        sufficient_test(phi, 1, 0, 3, Place.prime(5))
    assert e.value.hypothesis == "alpha critical"
    _, S = setup(normalize(X**3 - 2), 0)
    with pytest.raises(PreconditionError) as e:
        sufficient_test(normalize(X**3 - 2), 0, 0, 2, Place.prime(3), S)
    assert e.value.hypothesis == "place not in S"


# -- witnesses ------------------------------------------------------------------------

def test_witness_examples_over_q():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    tab = SearchTables(phi, lv, 8)
    got = {}
    for n in range(1, 9):
        r = new_prime_witness(phi, lv, n, S=S, tables=tab)
        got[n] = r.witness.place.value if r.witness else r.status
    assert got == {1: "none-found", 2: "none-found", 3: 5, 4: 13, 5: 677, 6: 45833,
                   7: 41, 8: 7121}


def test_witness_examples_over_qt():
    phi = xpt()
    lv, S = setup(phi, 0)
    r = new_prime_witness(phi, lv, 3, S=S)
    assert r.witness.place.value == T**3 + 2 * T**2 + T + 1
    assert r.witness.place.status == "irreducible"
    # the certificate divides the numerator exactly once and misses every exclusion
    N = orbit(phi, 0, 3)[3].num
    q, rem = divmod(N, r.witness.certificate)
    assert not rem and q == T
    assert verify_witness(phi, lv, S, r.witness)


def test_witness_for_cubic():
    phi = normalize(X**3 - 2)
    lv, S = setup(phi, 0)
    r = new_prime_witness(phi, lv, 1, S=S)
    assert r.witness.place.value == 2
    assert verify_witness(phi, lv, S, r.witness)


def test_verify_rejects_tampered_witness():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    w = new_prime_witness(phi, lv, 4, S=S).witness
    from dataclasses import replace
    assert verify_witness(phi, lv, S, w)
    assert not verify_witness(phi, lv, S, replace(w, place=Place.prime(5)))
    assert not verify_witness(phi, lv, S, replace(w, level=5))


def test_witness_is_necessary_candidate():
    for phi, beta in ((normalize(X**2 + 1), 0), (xpt(), RatFunc(0)),
                      (normalize(X**2 - Fraction(3, 4)), 2)):
        lv, S = setup(phi, beta)
        tab = SearchTables(phi, lv, 5)
        for n in range(1, 6):
            r = new_prime_witness(phi, lv, n, S=S, tables=tab)
            if r.witness is None:
                continue
            cands = necessary_candidates(phi, r.witness.beta_j, n)
            assert r.witness.place in cands.places


def test_two_level_mode_excludes_fewer_levels():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    r = new_prime_witness(phi, lv, 4, S=S, mode="two-level")
    assert r.witness.mode == "two-level"
    assert verify_witness(phi, lv, S, r.witness)


@settings(max_examples=25)
@given(st.sampled_from([1, 2, 3, -3, -4, 5, Fraction(1, 2), Fraction(-5, 4)]),
       st.sampled_from([0, 1, 3]), st.sampled_from([2, 3]))
def test_witnesses_reverify(c, beta, d):
    phi = normalize(X**d + Poly([c]))
    try:
        lv, S = setup(phi, beta)
    except (RestrictionError, HypothesisError, UndeterminedError):
        return
    levels = 5 if d == 2 else 4
    tab = SearchTables(phi, lv, levels)
    places = []
    for n in range(1, levels + 1):
        r = new_prime_witness(phi, lv, n, S=S, tables=tab)
        if r.witness is not None:
            assert verify_witness(phi, lv, S, r.witness)
            assert r.witness.place not in places
            places.append(r.witness.place)


# -- lemma sums ---------------------------------------------------------------------------

def test_lemma_sums_over_q():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    tab = lemma_sums(phi, 0, lv, 6, S=S)
    rows = {r.level: r for r in tab.rows}
    # orbit values 1, 2, 5, 26, 677 share no odd prime through level 5
    assert all(rows[n].z_sum == 0 for n in range(1, 6))
    # 458330 = 2 * 5 * 45833 meets level 3 in 5
    assert abs(rows[6].z_sum - ln(5)) < Decimal(10) ** -40
    assert abs(rows[4].v1_sum - ln(26)) < Decimal(10) ** -40
    assert rows[6].ratio(rows[6].v1_sum) <= 1


def test_lemma_sums_over_qt():
    phi = xpt()
    lv, S = setup(phi, RatFunc(0))
    tab = lemma_sums(phi, RatFunc(0), lv, 5, S=S)
    assert [int(r.v1_sum) for r in tab.rows] == [1, 2, 4, 8, 16]
    assert [int(r.scale) for r in tab.rows] == [1, 2, 4, 8, 16]
    assert all(r.ratio(r.v1_sum) <= phi.degree for r in tab.rows)


def test_witness_never_in_earlier_z_column():
    phi = normalize(X**2 + 1)
    lv, S = setup(phi, 0)
    tab = SearchTables(phi, lv, 8)
    for n in range(3, 9):
        w = new_prime_witness(phi, lv, n, S=S, tables=tab).witness
        for m in range(1, n):
            N = abs(orbit(phi, 0, m)[m])
            assert valuation(N, w.place) == 0


# -- radicals and abc -------------------------------------------------------------------

def test_radical_examples():
    r = radical_and_Iset([4, 2])
    assert [p.value for p in r.places] == [2]
    assert abs(r.rad - ln(2)) < Decimal(10) ** -40
    r = radical_and_Iset([RatFunc(T**2), RatFunc(T**2)])
    assert r.places == () and r.rad == 0
    r = radical_and_Iset([RatFunc(T**2), RatFunc(1 - T**2), RatFunc(1)])
    assert [str(p) for p in r.places] == ["t - 1", "t", "t + 1", "deg"]
    assert r.rad == 4
    with pytest.raises(ValueError):
        radical_and_Iset([0, 1])


def test_abc_examples():
    r = abc_check(RatFunc(T**2), RatFunc(1 - T**2), RatFunc(1))
    assert r.height == 2 and r.rad >= 3 and r.holds
    with pytest.raises(PreconditionError):
        abc_check(RatFunc(1), RatFunc(1), RatFunc(2))
    with pytest.raises(ValueError):
        abc_check(RatFunc(T), RatFunc(1), RatFunc(T))
    r = abc_check(1, 8, 9)
    assert r.holds is None
    assert abs(r.rad - ln(6)) < Decimal(10) ** -40
    assert abs(r.height - ln(9)) < Decimal(10) ** -40


def test_abc_divides_out_common_factor():
    g = T + 3
    r = abc_check(RatFunc(T**2 * g), RatFunc((1 - T**2) * g), RatFunc(g))
    assert r.height == 2 and r.holds


# -- report gates ------------------------------------------------------------------------

def test_report_gates():
    with pytest.raises(HypothesisError):
        zsigmondy_report(normalize(X**2 - 1), 0)
    with pytest.raises(HypothesisError):
        zsigmondy_report(normalize(X**3), 0)
    with pytest.raises(HypothesisError):
        zsigmondy_report(normalize(X**2 + 1), INF)
    with pytest.raises(RestrictionError):
        zsigmondy_report(normalize(X**3 + X), 0)
