import pytest
from hypothesis import given, settings, strategies as st

from rrlab.field import Field
from rrlab.ideal import Ideal, NotMPrimary, krull_dimension
from rrlab.monomial import integral_closure, minimalize, mono_power, standard_monomials
from rrlab.poly import Ring

R3 = Ring("xyz")
R3p = Ring("xyz", Field(32003))

mono3 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(any)


def primary_monomial(extra, top=(4, 4, 4)):
    pure = [tuple(top[i] if j == i else 0 for j in range(3)) for i in range(3)]
    return Ideal(R3, [R3.monomial(e) for e in pure + list(extra)])


def polys(R, texts):
    return [R(t) for t in texts]


@settings(max_examples=40, deadline=None)
@given(st.lists(mono3, max_size=4), st.lists(mono3, max_size=4))
def test_intersection_and_sum_lengths(a, b):
    I, J = primary_monomial(a), primary_monomial(b, (3, 5, 2))
    assert (I.intersect(J).colength() ==
            I.colength() + J.colength() - (I + J).colength())
    sI = set(I.standard_monomials())
    sJ = set(J.standard_monomials())
    assert set(I.intersect(J).standard_monomials()) == sI | sJ
    assert set((I + J).standard_monomials()) == sI & sJ


@settings(max_examples=40, deadline=None)
@given(st.lists(mono3, max_size=4), mono3)
def test_colon_length_identity(a, u):
    I = primary_monomial(a)
    f = R3.monomial(u)
    colon = I.colon(Ideal(R3, [f]))
    assert colon.colength() == I.colength() - (I + Ideal(R3, [f])).colength()
    for g in colon.generators():
        assert I.contains(g * f)


def test_colon_length_identity_non_monomial():
    I = Ideal(R3p, polys(R3p, ["x^2-y^2", "y^2-z^2", "x*y", "y*z", "x*z"]))
    for text in ["x", "x+2*y", "x*y+z^2"]:
        f = R3p(text)
        c = I.colon(Ideal(R3p, [f]))
        assert c.colength() == I.colength() - (I + Ideal(R3p, [f])).colength()


def test_products_and_powers():
    I = Ideal(R3, polys(R3, ["x^2-y^2", "y^2-z^2", "x*y", "y*z", "x*z"]))
    assert I.colength() == 5
    assert (I ** 2).colength() == 20
    assert (I * I) == I ** 2
    assert (I ** 2).issubset(I)
    assert not I.issubset(I ** 2)


def test_local_colength_drops_units():
    # (x^2+y^3, y^2+z^3, z^2) agrees with (x^2, y^2, z^2) near the origin
    I = Ideal(R3, polys(R3, ["x^2+y^3", "y^2+z^3", "z^2"])).near_origin()
    assert I.colength() == 8
    J = Ideal(R3, polys(R3, ["x+x^2", "y", "z"])).near_origin()
    assert J.colength() == 1


def test_not_m_primary_is_reported():
    with pytest.raises(NotMPrimary):
        Ideal(R3, polys(R3, ["x", "y"])).colength()


def test_quotient_ring_lengths():
    K = Field(32003)
    R = Ring(["X", "Y"], K, quotient=["X*Y"])
    m = Ideal.maximal(R).near_origin()
    # k[X,Y]/(XY): H(n) = 2n - 1 for n >= 1
    assert [(m ** n).colength() for n in range(1, 5)] == [1, 3, 5, 7]
    assert krull_dimension(R) == 1


def brute_closure_member(gens, u, kmax=4):
    for k in range(1, kmax + 1):
        uk = tuple(k * a for a in u)
        cur = {tuple([0] * len(u))}
        for _ in range(k):
            cur = {tuple(a + b for a, b in zip(c, g)) for c in cur for g in gens}
        if any(all(a >= b for a, b in zip(uk, c)) for c in cur):
            return True
    return False


@settings(max_examples=30, deadline=None)
@given(st.lists(mono3, max_size=3))
def test_integral_closure_contains_ideal_and_brute_members(extra):
    gens = minimalize([(3, 0, 0), (0, 3, 0), (0, 0, 3)] + list(extra))
    closed = integral_closure(gens, 3)
    inside = set(standard_monomials(gens, 3))
    outside_closure = set(standard_monomials(closed, 3))
    assert outside_closure <= inside
    for u in inside:
        if brute_closure_member(gens, u):
            assert u not in outside_closure
    assert integral_closure(closed, 3) == closed


@settings(max_examples=25, deadline=None)
@given(st.lists(mono3, max_size=3), st.integers(1, 3))
def test_closure_of_power_uses_scaled_polyhedron(extra, q):
    gens = minimalize([(2, 0, 0), (0, 3, 0), (0, 0, 2)] + list(extra))
    assert integral_closure(gens, 3, q) == integral_closure(mono_power(gens, q, 3), 3)
    I = Ideal._from_mono(R3, gens)
    assert I.power_is_integrally_closed_monomial(q) == \
        (I ** q).is_integrally_closed_monomial()


def test_integral_closure_example():
    I = Ideal(R3, polys(R3, ["x^3", "y^3", "z^3", "x*y*z"]))
    closed = I.monomial_integral_closure()
    assert closed == Ideal.m_power(R3, 3)
    assert not I.is_integrally_closed_monomial()
    assert closed.is_integrally_closed_monomial()


def test_minimal_generators():
    I = Ideal(R3, polys(R3, ["x^2", "x^3", "x*y", "x^2*y", "z"]))
    assert sorted(str(g) for g in I.minimal_generators()) == ["x*y", "x^2", "z"]
