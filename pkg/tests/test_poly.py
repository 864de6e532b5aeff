from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rrlab.field import RATIONALS, Field
from rrlab.poly import ParseError, Ring, format_polynomial, parse_polynomial

F7 = Field(7)
RQ = Ring("xyz")
R7 = Ring("xyz", F7)

exps = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.integers(-5, 5)
terms = st.lists(st.tuples(exps, coeffs), max_size=5)


def build(R, data):
    out = R.zero()
    for e, c in data:
        out = out + R.monomial(e, c)
    return out


@given(terms, terms, terms)
def test_ring_axioms_over_q(a, b, c):
    f, g, h = (build(RQ, t) for t in (a, b, c))
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RQ.zero()


@given(terms, terms)
def test_prime_field_matches_reduction_of_integer_arithmetic(a, b):
    fq, gq = build(RQ, a), build(RQ, b)
    f7, g7 = build(R7, a), build(R7, b)
    assert R7(format_polynomial(fq * gq)) == f7 * g7


@given(terms)
def test_print_parse_round_trip(a):
    f = build(RQ, a)
    assert parse_polynomial(format_polynomial(f), RQ) == f


@given(st.integers(1, 6))
def test_powers(k):
    f = RQ("x+y")
    g = RQ.one()
    for _ in range(k):
        g = g * f
    assert f ** k == g


def test_parse_rationals_and_spacing():
    f = RQ(" 3/2*x^2 * y - y*z + 1/3 ")
    assert str(f) == "3/2*x^2*y - y*z + 1/3"


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        RQ("x + w")
    assert info.value.position == 4
    assert "w" in str(info.value)


@pytest.mark.parametrize("text", ["x +", "x^", "(x", "x**y", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        RQ(text)


@given(st.integers(1, 31990))
def test_prime_field_inverse(a):
    K = Field(32003)
    assert K(a) * K.inv(K(a)) % K.p == 1


@given(st.fractions().filter(lambda q: q != 0))
def test_rational_inverse(q):
    a = RATIONALS(q)
    assert RATIONALS.to_fraction(a * RATIONALS.inv(a)) == Fraction(1)


@pytest.mark.parametrize("text,p", [("Q", 0), ("QQ", 0), ("Fp:32003", 32003), ("fp:7", 7),
                                    ("GF(101)", 101)])
def test_field_parse(text, p):
    assert Field.parse(text).p == p


@pytest.mark.parametrize("text", ["Fp:10", "R", "fp:1"])
def test_field_parse_rejects(text):
    with pytest.raises(ValueError):
        Field.parse(text)


def test_symmetric_residues():
    K = Field(7)
    assert K.to_fraction(K(-1)) == -1
    assert K(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        K(Fraction(1, 7))


@given(terms)
def test_degree_order_and_homogeneity(a):
    f = build(RQ, a)
    merged = {}
    for e, c in a:
        merged[e] = merged.get(e, 0) + c
    degs = {sum(e) for e, c in merged.items() if c}
    assert f.degree() == (max(degs) if degs else -1)
    assert f.order_at_origin() == (min(degs) if degs else -1)
    assert f.is_homogeneous() == (len(degs) <= 1)
