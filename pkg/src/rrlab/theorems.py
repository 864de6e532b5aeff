"""Evaluate the inequalities about e_3, e_4 and reduction numbers on an instance.

Every check returns :class:`Verdict` objects built from one shared
:class:`Evidence` record, so all verdicts of an instance use the same
Hilbert coefficients and the same D = e_2 - e_1 + e_0 - l(R/I).
Implications ("P implies Q") are encoded as verdicts with
lhs = [Q], rhs = [P] and relation ">=", where [.] is 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .filtration import Filtration
from .hilbert import HilbertData, h_polynomial
from .ideal import Ideal
from .poly import Polynomial
from .verdict import ASSUMED, FAILED, UNKNOWN, VERIFIED, Verdict

IC_MODES = ("assert", "verify", "off")


@dataclass
class Evidence:
    """Numbers shared by all verdicts of one instance."""

    d: int
    e: list
    colength: int
    eta: int
    r: int | None = None
    J: Ideal | None = None
    integrally_closed: str = UNKNOWN
    ic_detail: str = ""
    behaves_well: list | None = None
    depth_lower: int | None = None
    rr_vsum: int | None = None
    I: Ideal | None = None
    notes: list = field(default_factory=list)

    @classmethod
    def from_data(cls, data: HilbertData, **kw) -> "Evidence":
        e = list(data.e) + [0] * max(0, data.d + 1 - len(data.e))
        return cls(data.d, e, data.colength, data.eta, **kw)

    def ei(self, i: int) -> int:
        return self.e[i] if i < len(self.e) else 0

    @property
    def D(self) -> int:
        """e_2 - e_1 + e_0 - l(R/I)."""
        return self.ei(2) - self.ei(1) + self.ei(0) - self.colength

    @property
    def E(self) -> int:
        """e_1 - e_0 + l(R/I)."""
        return self.ei(1) - self.ei(0) + self.colength

    @property
    def bw(self) -> bool | None:
        if not self.behaves_well:
            return None
        return all(self.behaves_well)


def _flag(b: bool) -> int:
    return 1 if b else 0


def _status(ok: bool) -> str:
    return VERIFIED if ok else FAILED


def _ic(v: Verdict, ev: Evidence, name: str = "I integrally closed") -> Verdict:
    return v.hypothesis(name, ev.integrally_closed, ev.ic_detail)


def _reduction(v: Verdict, ev: Evidence) -> Verdict:
    if ev.r is None:
        return v.hypothesis("certified minimal reduction J", FAILED, "no reduction available")
    return v.hypothesis("certified minimal reduction J", VERIFIED, f"r_J = {ev.r}")


def implication(name: str, premise: bool, conclusion: bool) -> Verdict:
    return Verdict(name, _flag(conclusion), ">=", _flag(premise),
                   notes=["implication: lhs = [conclusion], rhs = [premise]"])


# ---------------------------------------------------------------------------
# integral closedness


def integrally_closed_status(I: Ideal, mode: str = "verify") -> tuple:
    """(status, detail) for the hypothesis that I is integrally closed."""
    if mode not in IC_MODES:
        raise ValueError(f"integrally_closed must be one of {IC_MODES}")
    if mode == "assert":
        return ASSUMED, "asserted by the instance"
    if mode == "off":
        return UNKNOWN, "not checked"
    if I.is_monomial and not I.ring.quotient:
        ok = I.is_integrally_closed_monomial()
        return _status(ok), "monomial closure via the Newton polyhedron"
    if I.colength() == 1:
        return VERIFIED, "I is the maximal ideal"
    if not I.ring.quotient and I.is_graded():
        gens = I.generators()
        k = min(g.degree() for g in gens)
        if Ideal.m_power(I.ring, k) == I:
            return VERIFIED, f"I is the power m^{k} of a regular ring"
    from .ratliff_rush import rr_closure

    if rr_closure(I, 1).ideal.colength() != I.colength():
        return FAILED, "the Ratliff-Rush closure of I is strictly larger"
    for u in I.standard_monomials():
        f = I.ring.monomial(u)
        for k in (2, 3):
            if (I ** k).contains(f ** k):
                return FAILED, f"u^{k} lies in I^{k} for a monomial u outside I"
    return UNKNOWN, "no certificate either way"


# ---------------------------------------------------------------------------
# lower bound and its converse


def _bw_hypothesis(v: Verdict, ev: Evidence) -> Verdict:
    name = "Ratliff-Rush filtration behaves well modulo a superficial sequence"
    need = max(ev.d - 2, 0)
    if ev.depth_lower is not None and ev.depth_lower >= ev.d - 1:
        return v.hypothesis(name, VERIFIED, f"depth G(I) >= {ev.depth_lower}")
    bw = ev.behaves_well or []
    if any(b is False for b in bw):
        return v.hypothesis(name, FAILED, "b_I < s_I for the certified element")
    if len(bw) >= need and bw:
        return v.hypothesis(name, VERIFIED, "b_I = s_I along the sequence")
    return v.hypothesis(name, UNKNOWN, f"checked for {len(bw)} of {need} elements")


def check_e3_lower(ev: Evidence) -> list:
    """e_3 >= D under behaves-well; for d = 3 also the equality criterion when D <= 1."""
    if ev.d < 3:
        raise ValueError("the e_3 lower bound needs d >= 3")
    e3, D = ev.ei(3), ev.D
    v = Verdict("e3 lower bound", e3, ">=", D)
    _bw_hypothesis(v, ev)
    if e3 < D:
        v.notes.append("e3 < D, so the Ratliff-Rush filtration cannot behave well")
        if ev.bw is False:
            v.notes.append("consistent: behaves_well computed false")
    out = [v]
    if ev.d == 3 and ev.bw is not None:
        p = Verdict("e3 = D iff behaves well (D <= 1)", _flag(e3 == D), "=", _flag(ev.bw),
                    notes=["lhs = [e3 = D], rhs = [behaves well]"])
        p.hypothesis("D <= 1", _status(D <= 1), f"D = {D}")
        _ic(p, ev)
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# upper bounds


def check_e3_upper_bounds(ev: Evidence) -> list:
    if ev.d < 3:
        raise ValueError("the e_3 upper bounds need d >= 3")
    e3, D, E, e2 = ev.ei(3), ev.D, ev.E, ev.ei(2)
    out = []
    b1 = None
    if ev.r is not None:
        b1 = Verdict("e3 bound (1): (r_J-1)/2 D", e3, "<=", Fraction(ev.r - 1, 2) * D)
        _reduction(_ic(b1, ev), ev)
        out.append(b1)
    b2 = _ic(Verdict("e3 bound (2): (e1-e0+l)/2 D", e3, "<=", Fraction(E, 2) * D), ev)
    b3 = _ic(Verdict("e3 bound (3): (e2-1)/2 D", e3, "<=", Fraction(e2 - 1, 2) * D), ev)
    sq = _ic(Verdict("e3 <= (e2-1)^2/2", e3, "<=", Fraction((e2 - 1) ** 2, 2)), ev)
    out += [b2, b3, sq]

    conds = {"r_J <= 3": ev.r is not None and ev.r <= 3, "D <= 1": D <= 1,
             "e1-e0+l <= 2": E <= 2, "e2 <= 3": e2 <= 3}
    held = [k for k, ok in conds.items() if ok]
    c = _ic(Verdict("e3 <= D (four conditions)", e3, "<=", D), ev)
    c.hypothesis("one of the four conditions", _status(bool(held)),
                 ", ".join(held) if held else "none holds")
    out.append(c)
    eq = _ic(Verdict("e3 = D when e1-e0+l = 2", e3, "=", D), ev)
    eq.hypothesis("e1-e0+l = 2", _status(E == 2), f"e1-e0+l = {E}")
    out.append(eq)

    if ev.d == 3 and ev.bw is not None and ev.integrally_closed in (VERIFIED, ASSUMED):
        bw = ev.bw
        pairs = []
        if b1 is not None:
            pairs.append(("(1)", b1, ev.r <= 3))
        pairs += [("(2)", b2, E <= 2), ("(3)", b3, e2 <= 3)]
        for tag, b, side in pairs:
            f = implication(f"equality in {tag} implies behaves well", b.equality_attained, bw)
            g = implication(f"behaves well and side condition imply equality in {tag}",
                            bw and side, b.equality_attained)
            for w in (f, g):
                _ic(w, ev)
            out += [f, g]
    return out


# ---------------------------------------------------------------------------
# reduction number bounds


def check_reduction_bounds(ev: Evidence) -> list:
    if ev.r is None:
        return []
    r, E, D, e2, e3 = ev.r, ev.E, ev.D, ev.ei(2), ev.ei(3)
    out = []
    rossi = Verdict("Rossi bound r_J <= e1-e0+l+1", r, "<=", E + 1,
                    notes=[f"e1-e0+l = {E}"])
    name = "depth G(I) >= d-2, or d = 3 and behaves well"
    if ev.d <= 2 or (ev.depth_lower is not None and ev.depth_lower >= ev.d - 2):
        rossi.hypothesis(name, VERIFIED, f"depth lower bound {ev.depth_lower}")
    elif ev.d == 3 and ev.bw:
        rossi.hypothesis(name, VERIFIED, "behaves well modulo a superficial element")
    else:
        rossi.hypothesis(name, UNKNOWN, "neither route certified")
    out.append(rossi)

    if ev.d >= 3:
        depth_ok = ev.d - 3 <= 0 or (ev.depth_lower is not None and ev.depth_lower >= ev.d - 3)
        depth_status = VERIFIED if depth_ok else UNKNOWN
        t = Verdict("reduction bound e1-e0+l+1+e2 D-e3", r, "<=", E + 1 + e2 * D - e3)
        _ic(t, ev)
        t.hypothesis("depth G(I) >= d-3", depth_status, f"lower bound {ev.depth_lower}")
        out.append(t)
        p = Verdict("reduction bound e1-e0+l+1+e2(e2-1)-e3", r, "<=",
                    E + 1 + e2 * (e2 - 1) - e3)
        p.hypothesis("depth G(I) >= d-3", depth_status, f"lower bound {ev.depth_lower}")
        out.append(p)
        if ev.d == 3:
            q = Verdict("Rossi bound when e2 = e1-e0+l and e3 >= 0", r, "<=", E + 1)
            _ic(q, ev)
            q.hypothesis("e2 = e1-e0+l", _status(e2 == E), f"e2 = {e2}, e1-e0+l = {E}")
            q.hypothesis("e3 >= 0", _status(e3 >= 0), f"e3 = {e3}")
            out.append(q)
    if ev.rr_vsum is not None:
        out.append(Verdict("r_J <= sum v_n(~F) - e0 + l + 1", r, "<=",
                           ev.rr_vsum - ev.ei(0) + ev.colength + 1))
    return out


def rr_vn_sum(I: Ideal, J: Ideal, dim: int | None = None) -> tuple:
    """(sum, terms) of v_n = l(~I^{n+1} / J ~I^n) over n >= 0 until it vanishes."""
    from .ratliff_rush import rr_filtration, rr_reduction_number

    F = rr_filtration(I, dim)
    rt, _ = rr_reduction_number(F, J)
    terms = {}
    for n in range(0, rt + 2):
        prod = J if n == 0 else J * F[n]
        terms[n] = prod.colength() - F.colength(n + 1)
    return sum(terms.values()), terms


# ---------------------------------------------------------------------------
# dimension two


def check_lemma46(F, J: Ideal, *, ic_mode: str = "verify") -> Verdict:
    """~r_J(F) <= e2 - e1 + e0 - l(R/I_1) + 2 for the I-adic filtration in d = 2."""
    from .ratliff_rush import rr_filtration, rr_reduction_number

    if isinstance(F, Ideal):
        F = Filtration.adic(F, 2)
    if F.dim != 2:
        raise ValueError("the lemma is stated in dimension two")
    if F.kind != "adic":
        raise ValueError("only I-adic filtrations are supported")
    I = F.base
    data = h_polynomial(F)
    e = data.e_upto(2)
    rt, _ = rr_reduction_number(rr_filtration(I, 2), J)
    v = Verdict("reduction number of ~F <= e2-e1+e0-l+2", rt, "<=",
                e[2] - e[1] + e[0] - data.colength + 2)
    st, detail = integrally_closed_status(I, ic_mode)
    return v.hypothesis("I_1 integrally closed", st, detail)


# ---------------------------------------------------------------------------
# Koszul homology and the r_J <= 3 bound


def koszul_H3(I: Ideal, J: Ideal, n: int) -> int:
    """l((I^{n-2} : J) / I^{n-3}) with I^m = R for m <= 0."""
    if n - 2 <= 0:
        return 0
    A = (I ** (n - 2)).colon(J)
    low = I ** (n - 3) if n - 3 > 0 else Ideal.unit(I.ring)
    return low.colength() - A.colength()


def koszul_H2(F: Filtration, y: Polynomial, z: Polynomial, n: int) -> int:
    """l((F_{n-1} : (y, z)) / F_{n-2}) with F_m = R for m <= 0."""
    if n - 1 <= 0:
        return 0
    Y = Ideal(F.ring, [y, z])
    A = F[n - 1].colon(Y)
    return F.colength(n - 2) - A.colength()


def koszul_homology_lengths(I: Ideal, J_gens: Sequence[Polynomial], n: int, *,
                            filtration: Filtration | None = None) -> tuple:
    """(H_3 of the I-adic complex for J = (x, y, z), H_2 for the image filtration mod x).

    The image filtration is taken from ``filtration`` (default: I-adic).
    """
    if len(J_gens) != 3:
        raise ValueError("expected a parameter ideal with three generators")
    ring = I.ring
    x, y, z = (ring(g) if isinstance(g, str) else g for g in J_gens)
    J = Ideal(ring, [x, y, z]).near_origin()
    F = filtration if filtration is not None else Filtration.adic(I, 3)
    G = Filtration.image(F, [x])
    return koszul_H3(I, J, n), koszul_H2(G, G.ring.convert(y), G.ring.convert(z), n)


def thm211_rhs(I: Ideal, J: Ideal) -> tuple:
    """(l(I^3/JI^2), l((J cap I^3)/JI^2)) using l(R/(J cap I^3)) = l(R/J)+l(R/I^3)-l(R/(J+I^3))."""
    I3 = I ** 3
    JI2 = J * (I ** 2)
    lJI2, lI3 = JI2.colength(), I3.colength()
    l_cap = J.colength() + lI3 - (J + I3).colength()
    return lJI2 - lI3, lJI2 - l_cap


def check_thm211(ev: Evidence) -> list:
    if ev.I is None or ev.J is None or ev.r is None:
        return []
    a, b = thm211_rhs(ev.I, ev.J)
    e3 = ev.ei(3)
    v = Verdict("e3 <= l(I^3/JI^2) + l((J cap I^3)/JI^2)", e3, "<=", a + b,
                notes=[f"l(I^3/JI^2) = {a}", f"l((J cap I^3)/JI^2) = {b}"])
    _ic(v, ev)
    v.hypothesis("r_J <= 3", _status(ev.r <= 3), f"r_J = {ev.r}")
    out = [v]
    z = Verdict("e3 = 0 when r_J <= 2", e3, "=", 0)
    _ic(z, ev)
    z.hypothesis("r_J <= 2", _status(ev.r <= 2), f"r_J = {ev.r}")
    out.append(z)
    return out


# ---------------------------------------------------------------------------
# dimension four


def check_e4(ev: Evidence, q: int | None = None, *, depth_power: int | None = None,
             power_ic: str = UNKNOWN) -> list:
    """Sign of e_4.

    ``depth_power`` is a certified lower bound for depth G(I^q); ``power_ic``
    the status of "I^q integrally closed".
    """
    if ev.d != 4:
        raise ValueError("the e_4 statements are for d = 4")
    q = ev.eta if q is None else q
    e4 = ev.ei(4)
    q_ok = _status(q >= ev.eta)
    one = Verdict("e4 >= 0 under depth G(I^q) >= 3", e4, ">=", 0)
    one.hypothesis("q >= eta", q_ok, f"q = {q}, eta = {ev.eta}")
    name = "depth G(I^q) >= 3"
    if depth_power is not None and depth_power >= 3:
        one.hypothesis(name, VERIFIED, f"lower bound {depth_power}")
    elif e4 < 0:
        one.hypothesis(name, FAILED, "e4 < 0, so depth G(I^n) <= 2 for large n")
    else:
        one.hypothesis(name, UNKNOWN, f"lower bound {depth_power}")
    if e4 < 0:
        one.notes.append("contrapositive: e4 < 0 implies depth G(I^n) <= 2 for n >> 0")
    if depth_power is not None:
        one.notes.append(f"certified depth G(I^q) >= {depth_power}")
    two = Verdict("e4 <= 0 when I^q integrally closed and r_J <= 3", e4, "<=", 0)
    two.hypothesis("q >= eta", q_ok, f"q = {q}, eta = {ev.eta}")
    two.hypothesis("I^q integrally closed", power_ic, "")
    if ev.r is None:
        two.hypothesis("r_J <= 3", UNKNOWN, "no reduction available")
    else:
        two.hypothesis("r_J <= 3", _status(ev.r <= 3), f"r_J = {ev.r}")
    return [one, two]


def power_ic_status(I: Ideal, q: int, mode: str = "verify") -> str:
    if mode == "assert":
        return ASSUMED
    if mode == "off":
        return UNKNOWN
    if I.is_monomial and not I.ring.quotient:
        return _status(I.power_is_integrally_closed_monomial(q))
    return UNKNOWN


def evaluate(ev: Evidence) -> list:
    """Every applicable check for the dimension of ``ev``."""
    out = []
    if ev.d >= 3:
        out += check_e3_lower(ev)
        out += check_e3_upper_bounds(ev)
        out += check_thm211(ev)
    out += check_reduction_bounds(ev)
    return out

