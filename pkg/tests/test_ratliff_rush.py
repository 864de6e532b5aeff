import pytest
from hypothesis import given, settings, strategies as st

from rrlab.field import Field
from rrlab.ideal import Ideal
from rrlab.poly import Ring
from rrlab.ratliff_rush import (RRHorizonExhausted, agreement_point, b_invariant,
                                behaves_well, e3_identity_check, rr_closure,
                                rr_coefficients_agree, rr_hilbert, sandwich_check)
from rrlab.reductions import find_superficial_sequence

R2 = Ring("xy")
R3p = Ring("xyz", Field(32003))
GAP = ["x^4", "x^3*y", "x*y^3", "y^4"]


def test_closure_of_the_gap_ideal():
    I = Ideal.from_strings(R2, GAP)
    rec = rr_closure(I, 1)
    assert not rec.equal_to_In
    assert rec.ideal == Ideal.m_power(R2, 4)
    assert rec.ideal.contains(R2("x^2*y^2")) and not I.contains(R2("x^2*y^2"))
    assert agreement_point(I) == 2
    assert rr_closure(I, 5).served_as_power


def test_rr_filtration_has_the_same_coefficients():
    I = Ideal.from_strings(R2, GAP)
    agree, adic_e, rr_e = rr_coefficients_agree(I)
    assert agree and adic_e == rr_e == [16, 6, 0]
    assert rr_hilbert(I).h == [10, 6]


mono2 = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.lists(mono2, max_size=3))
def test_sandwich_and_coefficients(p, q, extra):
    I = Ideal(R2, [R2.monomial(e) for e in [(p, 0), (0, q)] + extra])
    for row in sandwich_check(I, 3).values():
        assert row["contains_power"] and row["inside_closure"]
    assert rr_coefficients_agree(I)[0]
    # ~I^n = I^n for large n
    n = agreement_point(I)
    assert rr_closure(I, n).equal_to_In and rr_closure(I, n + 1).equal_to_In


def test_behaves_well_in_dimension_two():
    I = Ideal.from_strings(R2, GAP)
    (x, cert), = find_superficial_sequence(I, 1, 3)
    assert cert.passed and I.contains(x)
    bw = behaves_well(I, x)
    assert bw.b.value == bw.s.value == 1
    assert bw.verdict and all(bw.direct.values())


def test_non_superficial_element_is_rejected():
    I = Ideal.from_strings(R2, GAP)
    with pytest.raises(RRHorizonExhausted):
        b_invariant(I, R2("x+2*y"))


@pytest.mark.parametrize("gens,e3,b,s", [
    (GAP + ["z"], -1, 0, 1),
    (["x^2", "y^2", "z^2", "x*y*z"], 0, 0, 0),
])
def test_e3_identity(gens, e3, b, s):
    I = Ideal.from_strings(R3p, gens)
    (x, _), = find_superficial_sequence(I, 1, 3)
    ident = e3_identity_check(I, x, seed=1)
    assert (ident.e3, ident.b, ident.s) == (e3, b, s)
    assert ident.e3 == ident.e3_tilde_image + ident.b - ident.s
    assert ident.e3_tilde_image == ident.e3_tilde_sum
    assert ident.verdict.holds
