import pytest
from hypothesis import given, settings, strategies as st

from rrlab.field import Field
from rrlab.ideal import Ideal
from rrlab.poly import Ring
from rrlab.reductions import (ReductionError, depth_G_lower_bound, find_minimal_reduction,
                              find_superficial_sequence, hilbert_data, reduction_number, v_n,
                              valabrega_valla_test)

K = Field(32003)
R2 = Ring("xy", K)
R3 = Ring("xyz", K)


def check_certificate(I, cert, d):
    J = cert.J
    assert len(cert.generators) == d
    assert J.issubset(I)
    assert cert.colength_J == hilbert_data(I, d).e[0]
    r = cert.r
    assert (J * (I ** r) if r else J) == I ** (r + 1)
    if r > 0:
        below = J * (I ** (r - 1)) if r > 1 else J
        assert below.colength() > (I ** r).colength()


mono2 = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.lists(mono2, max_size=3), st.integers(0, 99))
def test_random_minimal_reductions_in_two_variables(p, q, extra, seed):
    I = Ideal(R2, [R2.monomial(e) for e in [(p, 0), (0, q)] + extra])
    cert = find_minimal_reduction(I, seed)
    check_certificate(I, cert, 2)
    # the colon-free length of the reduction matches e0 for every draw
    assert cert.colength_J == sum(hilbert_data(I).h)


def test_pinned_reduction_and_number():
    I = Ideal.from_strings(R3, ["x^4", "y^4", "z^4", "x^3*y", "x*y^3", "y^3*z", "y*z^3",
                                "x^3*z", "x*z^3"])
    cert = find_minimal_reduction(I, pinned=["x^4", "y^4", "z^4"])
    assert cert.pinned and cert.r == 4
    check_certificate(I, cert, 3)
    assert [c["equal"] for c in cert.checks] == [False] * 4 + [True, True]


def test_parameter_ideal_is_its_own_reduction():
    I = Ideal.from_strings(R3, ["x^2", "y^3", "z"])
    cert = find_minimal_reduction(I, 1)
    assert cert.r == 0 and cert.colength_J == 6


def test_non_reduction_is_reported():
    I = Ideal.from_strings(R2, ["x^2", "x*y", "y^2"])
    with pytest.raises(ValueError):
        reduction_number(I, Ideal.from_strings(R2, ["x^2", "y"]))
    with pytest.raises(ReductionError):
        reduction_number(I, Ideal.from_strings(R2, ["x^2", "y^3"]), horizon=3)


def test_v_n_values():
    I = Ideal.from_strings(R2, ["x^4", "x^3*y", "x*y^3", "y^4"])
    cert = find_minimal_reduction(I, 5)
    vs = [v_n(I, cert.J, n) for n in range(cert.r + 2)]
    assert all(v >= 0 for v in vs)
    assert vs[cert.r] == 0 or cert.r == 0
    # v_0 = l(I/J) = e0 - l(R/I)
    data = hilbert_data(I)
    assert vs[0] == data.e[0] - I.colength()


def test_superficial_certificate():
    I = Ideal.from_strings(R3, ["x^2", "y^2", "z^2", "x*y"])
    (x, cert), = find_superficial_sequence(I, 1, 4)
    assert cert.passed and I.contains(x)
    lo, hi = cert.window
    assert all(cert.colon_terms[n] == 0 for n in range(lo, hi + 1))
    assert all(cert.e_check)
    seq = find_superficial_sequence(I, 2, 4)
    assert len(seq) == 2


def test_valabrega_valla_routes_agree():
    I = Ideal.from_strings(R2, ["x^4", "x^3*y", "x*y^3", "y^4"])
    x = R2("x^4+y^4")
    res = valabrega_valla_test(I, x, 4, direct=True)
    assert res.passed == all(res.direct.values())
    assert not res.passed and res.defects[1] == 1


@pytest.mark.parametrize("gens,expected", [
    (["x", "y", "z"], 3),
    (["x^2", "y^2", "z^2", "x*y"], 3),
])
def test_depth_bounds(gens, expected):
    I = Ideal.from_strings(R3, gens)
    assert depth_G_lower_bound(I, 0).value == expected


def test_depth_zero_for_the_gap_ideal():
    I = Ideal.from_strings(R2, ["x^4", "x^3*y", "x*y^3", "y^4"])
    db = depth_G_lower_bound(I, 0)
    assert db.value == 0 and db.failures
