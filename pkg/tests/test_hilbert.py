from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from rrlab.field import Field
from rrlab.filtration import Filtration
from rrlab.hilbert import (HorizonExhausted, binomial_fit, coefficient, epsilon_closed_forms,
                           h_polynomial, hilbert_polynomial_value, numerator, postulation,
                           power_coefficients, power_identities)
from rrlab.ideal import Ideal
from rrlab.poly import Ring

R2 = Ring("xy")
R3 = Ring("xyz")


def brute_power_colength(gens, n, box):
    """Count lattice points of the box outside I^n, I monomial in two variables."""
    cur = {(0, 0)}
    for _ in range(n):
        cur = {(a + c, b + d) for a, b in cur for c, d in gens}
    return sum(1 for a in range(box) for b in range(box)
               if not any(a >= c and b >= d for c, d in cur))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), max_size=3))
def test_hilbert_function_matches_lattice_count(p, q, extra):
    gens = [(p, 0), (0, q)] + [(a, b) for a, b in extra if a < p or b < q]
    I = Ideal(R2, [R2.monomial(g) for g in gens])
    data = h_polynomial(I)
    for n in range(1, 4):
        assert data.H[n] == brute_power_colength(gens, n, n * max(p, q) + 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), max_size=3))
def test_numerator_invariants(p, q, extra):
    I = Ideal(R2, [R2.monomial(g) for g in [(p, 0), (0, q)] + extra])
    data = h_polynomial(I)
    d = data.d
    # h(1) = e0 and h(0) = l(R/I)
    assert sum(data.h) == data.e[0]
    assert data.h[0] == I.colength()
    # the d-th difference of H settles at e0
    diffs = data.H
    for _ in range(d):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    assert diffs[-1] == diffs[-2] == data.e[0]
    assert data.stabilization["verified"]
    for n in range(max(data.eta, 1), len(data.H)):
        assert data.polynomial(n) == data.H[n]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_powers_of_the_maximal_ideal(k):
    I = Ideal.m_power(R3, k)
    data = h_polynomial(I)
    assert data.e[0] == k ** 3
    for n in range(1, len(data.H)):
        assert data.H[n] == comb(k * n + 2, 3)


def test_parameter_ideal_has_constant_numerator():
    I = Ideal.from_strings(R3, ["x^2", "y^3", "z"])
    data = h_polynomial(I)
    assert data.h == [6]
    assert data.e == [6, 0, 0, 0]


def test_known_numerator_of_non_monomial_ideal():
    I = Ideal.from_strings(R3, ["x^2-y^2", "y^2-z^2", "x*y", "y*z", "x*z"])
    data = h_polynomial(I)
    assert data.h == [5, 0, 6, -4, 1]
    assert data.e == [8, 4, 0, 0]


def test_quotient_ring_numerator():
    R = Ring(["X", "Y", "Z"], Field(32003), quotient=["X*Y*Z"])
    m = Ideal.maximal(R).near_origin()
    data = h_polynomial(Filtration.adic(m))
    assert data.d == 2
    assert data.h == [1, 1, 1]


def test_horizon_exhaustion_keeps_partial_table():
    I = Ideal.from_strings(R3, ["x^4", "y^4", "z^4", "x^3*y", "x*y^3", "y^3*z", "y*z^3"])
    with pytest.raises(HorizonExhausted) as info:
        h_polynomial(I, horizon=2)
    assert info.value.H[:2] == [0, I.colength()]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(1, 3))
def test_numerator_and_coefficients_round_trip(h, d):
    if sum(h) == 0:
        return
    e = [coefficient(h, i) for i in range(d + 1)]
    # H(n) = sum_k h_k * binom(n - k + d - 1, d), the length of R/I^n
    H = [0] + [sum(c * comb(n - k + d - 1, d) if n - k + d - 1 >= d else 0
                   for k, c in enumerate(h)) for n in range(1, len(h) + d + 4)]
    c = numerator(H, d)
    assert c[:len(h)] == h
    assert binomial_fit(H, d, len(h) + 1) == e
    eta = postulation(H, e, d)
    assert all(hilbert_polynomial_value(e, d, n) == H[n] for n in range(max(eta, 1), len(H)))


@given(st.lists(st.integers(-20, 20), min_size=5, max_size=5), st.integers(1, 5))
def test_closed_forms_match_binomial_rescaling(e, q):
    e = [abs(e[0]) + 1] + e[1:]
    direct = power_coefficients(e, 4, q)
    closed = epsilon_closed_forms(e, q)
    assert [Fraction(v) for v in direct[:4]] == closed


def test_power_identity_on_a_small_ideal():
    I = Ideal.from_strings(R3, ["x^2", "y^2", "z^2", "x*y"])
    pi = power_identities(I, 2)
    assert pi.agree
    assert pi.e3_via_power == pi.e_target
