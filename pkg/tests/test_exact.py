from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zsigram.exact import (
    FactorBudget, Poly, RatFunc, discriminant, int_factor, is_prime, modp, poly_gcd,
    qt_rational_roots, rational_roots, resultant, roots_with_multiplicity,
    squarefree_decomposition,
)
from zsigram.exact.integers import integer_root, next_prime, primes_up_to

from conftest import T, X

small = st.integers(-9, 9)
coeffs = st.lists(small, min_size=1, max_size=5)


def poly(cs):
    return Poly([Fraction(c) for c in cs])


# -- fixed values ------------------------------------------------------------------

def test_gcd_examples():
    assert poly_gcd(X**2 - 1, X - 1) == X - 1
    f = X**2 * 3 + 6
    assert poly_gcd(f, Poly()) == X**2 + 2


def test_resultant_sign_convention():
    # Res(f, g) = lc(f)^deg g * prod g(roots of f) = g(2) = -1
    assert resultant(X - 2, X - 3) == -1
    assert resultant(X - 3, X - 2) == 1


def test_resultant_examples():
    f = X**2 + 1
    assert resultant(f, f) == 0
    assert resultant(X**2 + 1, X**2 - 1) == 4


def test_discriminant_examples():
    assert discriminant(X**3 - 2) == -108
    assert discriminant(X**2 + 3 * X + 5) == 9 - 20
    assert discriminant((X - 1) ** 2) == 0
    assert discriminant(X**2 + 1) == -4
    d = discriminant(Poly([RatFunc(T), RatFunc(0), RatFunc(1)]))
    assert d == RatFunc(T * -4)


def test_discriminant_mod_p():
    assert discriminant(X**3 - 2, modulus=5) == (-108) % 5
    assert discriminant(X**3 - 2, modulus=3) == 0


def test_squarefree_examples():
    assert squarefree_decomposition(X**3 + X**2) == [(X + 1, 1), (X, 2)]
    f = (X**2 + 1) ** 3 * (X - 2)
    assert squarefree_decomposition(f) == [(X - 2, 1), (X**2 + 1, 3)]
    assert squarefree_decomposition(X**2 * 2 + 2) == [(X**2 + 1, 1)]


def test_squarefree_mod_p_in_characteristic():
    # x^4 + x^2 = x^2 (x + 1)^2 over GF(2); the p-th power case must be handled
    out = squarefree_decomposition(X**4 + X**2, modulus=2)
    prod = Poly.const(1)
    for g, i in out:
        prod = prod * g ** i
    assert modp.reduce(prod.coeffs, 2) == modp.reduce((X**4 + X**2).coeffs, 2)
    assert all(i == 2 for _, i in out)


def test_int_factor_examples():
    r = int_factor(677)
    assert r.factors == ((677, 1),) and r.status == "complete"
    assert int_factor(26).factors == ((2, 1), (13, 1))
    assert int_factor(458330).factors == ((2, 1), (5, 1), (45833, 1))
    assert int_factor(210066388901).factors == ((41, 1), (1277, 1), (4012193, 1))


def test_int_factor_budget_exhaustion():
    p = next_prime(10**59)
    q = next_prime(3 * 10**59)
    n = p * q
    r = int_factor(n, FactorBudget(trial_limit=100, rho_iterations=10))
    assert r.status == "partial"
    assert r.cofactor == n and r.factors == ()


def test_primes():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert integer_root(10**30, 3) == 10**10
    assert integer_root(10**30 + 5, 3) is None


def test_rational_roots():
    assert rational_roots(X**2 * 6 - X - 1) == [Fraction(-1, 3), Fraction(1, 2)]
    assert rational_roots(X**2 + 1) == []
    roots, cof = roots_with_multiplicity((X - 1) ** 2 * (X**2 + 1))
    assert roots == [(1, 2)] and cof == X**2 + 1


def test_qt_rational_roots():
    x = Poly([RatFunc(0), RatFunc(1)])
    f = (x - RatFunc(T)) * (x - RatFunc(T + 1, T))
    roots = qt_rational_roots(f)
    assert set(roots) == {RatFunc(T), RatFunc(T + 1, T)}


def test_modp_roots_and_irreducibility():
    assert sorted(modp.roots(modp.reduce((X**2 - 1).coeffs, 7), 7)) == [1, 6]
    assert modp.is_irreducible(modp.reduce((X**2 + 1).coeffs, 3), 3)
    assert not modp.is_irreducible(modp.reduce((X**2 + 1).coeffs, 5), 5)


# -- properties ---------------------------------------------------------------------

@given(coeffs, coeffs, coeffs)
def test_gcd_recovers_common_factor(a, b, c):
    f, g, h = poly(a), poly(b), poly(c)
    if not h or h.degree() < 0:
        return
    if not f or not g or poly_gcd(f, g).degree() > 0:
        return
    assert poly_gcd(f * h, g * h) == h.monic()


@given(coeffs, coeffs, coeffs)
def test_resultant_multiplicative(a, b, c):
    f, g, h = poly(a), poly(b), poly(c)
    if not f or not g or not h:
        return
    assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


@given(coeffs, coeffs)
def test_resultant_antisymmetry(a, b):
    f, g = poly(a), poly(b)
    if not f or not g:
        return
    sign = -1 if f.degree() * g.degree() % 2 else 1
    assert resultant(f, g) == sign * resultant(g, f)


@given(st.lists(st.tuples(coeffs, st.integers(1, 3)), min_size=1, max_size=3), small)
def test_squarefree_reassembles(parts, lead):
    f = Poly.const(lead or 1)
    for cs, e in parts:
        p = poly(cs)
        if p:
            f = f * p ** e
    dec = squarefree_decomposition(f)
    prod = Poly.const(f.lc())
    for g, i in dec:
        prod = prod * g ** i
        assert poly_gcd(g, g.derivative()).degree() == 0
    assert prod == f
    assert len({i for _, i in dec}) == len(dec)


@given(st.integers(2, 10**15))
def test_int_factor_reassembles(n):
    r = int_factor(n)
    assert r.reassemble() == n
    assert all(is_prime(p) for p in r.primes())


@given(st.lists(st.integers(0, 12), min_size=1, max_size=5), st.sampled_from([2, 3, 5, 7]))
def test_modp_squarefree_reassembles(cs, p):
    f = Poly(cs)
    red = modp.reduce(f.coeffs, p)
    if len(red) < 2:
        return
    prod = [red[-1]]
    for g, i in modp.squarefree_decomposition(red, p):
        for _ in range(i):
            prod = modp.mul(prod, g, p)
    assert prod == red
