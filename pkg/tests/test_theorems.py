from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rrlab.field import Field
from rrlab.ideal import Ideal
from rrlab.poly import Ring
from rrlab.theorems import (Evidence, check_e3_lower, check_e3_upper_bounds, check_e4,
                            check_lemma46, check_reduction_bounds, evaluate, implication,
                            integrally_closed_status, thm211_rhs)
from rrlab.verdict import ASSUMED, FAILED, UNKNOWN, VERIFIED, Verdict


def by_name(verdicts):
    return {v.name: v for v in verdicts}


def ev3(e, colength, r=None, ic=VERIFIED, bw=None, depth=None):
    return Evidence(3, list(e), colength, 0, r=r, integrally_closed=ic, behaves_well=bw,
                    depth_lower=depth)


def test_verdict_status_ladder():
    v = Verdict("t", 2, "<=", 1)
    assert v.status == "violated" and v.is_finding
    v = Verdict("t", 2, "<=", 1).hypothesis("h", UNKNOWN)
    assert v.is_unverified_violation and not v.is_finding
    v = Verdict("t", 2, "<=", 1).hypothesis("h", ASSUMED)
    assert v.is_unverified_violation
    v = Verdict("t", 2, "<=", 1).hypothesis("h", FAILED)
    assert v.status == "not applicable - hypothesis failed" and not v.is_finding
    v = Verdict("t", 1, "<=", 1).hypothesis("h", VERIFIED)
    assert v.status == "holds" and v.equality_attained


@given(st.fractions(), st.sampled_from(["<=", ">=", "=", "<", ">"]), st.fractions())
def test_verdict_round_trip(a, rel, b):
    v = Verdict("x", a, rel, b).hypothesis("h", VERIFIED, "d")
    w = Verdict.from_dict(v.to_dict())
    assert (w.lhs, w.relation, w.rhs, w.status) == (v.lhs, v.relation, v.rhs, v.status)


def test_implication_encoding():
    assert implication("p => q", True, False).status == "violated"
    assert implication("p => q", False, False).holds
    assert implication("p => q", True, True).holds


def test_negative_control_numbers():
    ev = ev3([64, 48, 4, 0], 30, r=4, ic=FAILED, depth=0, bw=[True])
    assert ev.D == -10 and ev.E == 14
    got = by_name(check_e3_upper_bounds(ev))
    assert got["e3 bound (1): (r_J-1)/2 D"].rhs == -15
    assert got["e3 bound (2): (e1-e0+l)/2 D"].rhs == -70
    assert got["e3 bound (3): (e2-1)/2 D"].rhs == -15
    for v in got.values():
        if not v.holds:
            assert v.status == "not applicable - hypothesis failed"
            assert not v.is_finding


def test_equality_case_of_bound_one():
    ev = ev3([76, 48, 4, 1], 31, r=3, ic=ASSUMED)
    assert ev.D == 1
    got = by_name(check_e3_upper_bounds(ev))
    b1 = got["e3 bound (1): (r_J-1)/2 D"]
    assert b1.holds and b1.equality_attained
    assert got["e3 bound (2): (e1-e0+l)/2 D"].rhs == Fraction(3, 2)
    assert got["e3 bound (3): (e2-1)/2 D"].rhs == Fraction(3, 2)
    assert got["e3 <= D (four conditions)"].holds


def test_lower_bound_and_converse():
    ev = ev3([6, 8, 3, -1], 1, r=3, ic=VERIFIED, bw=[False], depth=1)
    assert ev.D == 0
    lower, conv = check_e3_lower(ev)
    assert lower.status == "not applicable - hypothesis failed"
    assert conv.holds and conv.lhs == conv.rhs == 0


def test_reduction_bound_values():
    ev = ev3([8, 11, 4, 0], 1, r=3, ic=VERIFIED, depth=0)
    got = by_name(check_reduction_bounds(ev))
    assert got["reduction bound e1-e0+l+1+e2 D-e3"].rhs == 5
    assert got["reduction bound e1-e0+l+1+e2(e2-1)-e3"].rhs == 17


def test_evaluate_has_no_findings_on_consistent_data():
    ev = ev3([8, 4, 0, 0], 5, r=2, ic=FAILED, bw=[True], depth=0)
    assert not any(v.is_finding for v in evaluate(ev))


def test_e4_contrapositive():
    ev = Evidence(4, [81, 81, 27, -23, -25], 33, 2, r=4, integrally_closed=UNKNOWN)
    one, two = check_e4(ev, depth_power=2)
    assert one.status == "not applicable - hypothesis failed"
    assert any("contrapositive" in n for n in one.notes)
    hyp = {h["name"]: h["status"] for h in one.hypotheses}
    assert hyp["depth G(I^q) >= 3"] == FAILED
    assert {h["name"]: h["status"] for h in two.hypotheses}["r_J <= 3"] == FAILED
    with pytest.raises(ValueError):
        check_e4(ev3([1, 0, 0, 0], 1))


def test_e4_with_certified_depth():
    ev = Evidence(4, [1, 0, 0, 0, 0], 1, 0, r=0)
    one, _ = check_e4(ev, depth_power=4)
    assert one.holds and one.status == "holds"


def test_integrally_closed_status_modes():
    R = Ring("xyz")
    I = Ideal.from_strings(R, ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"])
    assert integrally_closed_status(I, "verify")[0] == VERIFIED
    J = Ideal.from_strings(R, ["x^2", "y^2", "z^2"])
    assert integrally_closed_status(J, "verify")[0] == FAILED
    assert integrally_closed_status(J, "assert")[0] == ASSUMED
    assert integrally_closed_status(J, "off")[0] == UNKNOWN
    with pytest.raises(ValueError):
        integrally_closed_status(J, "maybe")
    K = Ideal.from_strings(R, ["x^2-y^2", "y^2-z^2", "x*y", "y*z", "x*z"])
    assert integrally_closed_status(K, "verify")[0] == FAILED


def test_lemma46_on_integrally_closed_ideal():
    R = Ring("xy", Field(32003))
    I = Ideal.from_strings(R, ["x^3", "x^2*y", "x*y^2", "y^3"])
    J = Ideal.from_strings(R, ["x^3", "y^3"])
    v = check_lemma46(I, J)
    assert v.holds and v.applicable


def test_thm211_lengths_are_nonnegative():
    R = Ring("xyz", Field(32003))
    I = Ideal.from_strings(R, ["x^2", "y^2", "z^2", "x*y"])
    J = Ideal.from_strings(R, ["x^2", "y^2", "z^2"])
    a, b = thm211_rhs(I, J)
    assert a >= 0 and b >= 0
    assert a >= b
