"""Ratliff-Rush closures, the filtration {~I^n} and the invariants b_I, s_I.

The closure of I^n is the stable value of the ascending chain
``C_t = (I^{n+t} : I^t)``.  Since ``(A : BC) = ((A : B) : C)`` the chain is
built from single colons by I: ``C(n, t) = (C(n+1, t-1) : I)``, memoized
across n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .filtration import Filtration
from .hilbert import HilbertData, h_polynomial
from .ideal import Ideal, krull_dimension, set_dimension
from .poly import Polynomial, format_polynomial
from .reductions import adic, colon_defects, find_minimal_reduction, hilbert_data
from .verdict import VERIFIED, Verdict

DEFAULT_WINDOW = 3
DEFAULT_MAX_T = 16
MAX_B_EXTENSION = 12


class RRHorizonExhausted(RuntimeError):
    """The colon chain did not stabilize within the allowed number of steps."""


class InternalInconsistency(AssertionError):
    """Two independent routes to the same quantity disagree."""


@dataclass
class RRRecord:
    n: int
    chain: list
    stable_at: int
    ideal: Ideal
    equal_to_In: bool
    served_as_power: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "chain_colengths": list(self.chain), "stable_at": self.stable_at,
                "colength": self.chain[-1] if self.chain else 0,
                "equal_to_In": self.equal_to_In, "served_as_power": self.served_as_power}


def _state(I: Ideal) -> dict:
    st = I.__dict__.get("_rr_state")
    if st is None:
        st = I.__dict__["_rr_state"] = {"chain": {}, "records": {}, "agree_from": None}
    return st


def _chain(I: Ideal, n: int, t: int) -> Ideal:
    memo = _state(I)["chain"]
    key = (n, t)
    got = memo.get(key)
    if got is None:
        got = I ** n if t == 0 else _chain(I, n + 1, t - 1).colon(I)
        memo[key] = got
    return got


def rr_closure(I: Ideal, n: int, *, window: int = DEFAULT_WINDOW, max_t: int = DEFAULT_MAX_T,
               check_chain: bool = True) -> RRRecord:
    """The Ratliff-Rush closure of I^n with its stabilization record.

    Once ~I^m = I^m holds at two consecutive m, larger n are served as I^n.
    """
    st = _state(I)
    rec = st["records"].get(n)
    if rec is not None:
        return rec
    if n <= 0:
        unit = Ideal.unit(I.ring)
        return RRRecord(n, [0], 0, unit, True)
    # closures are produced in increasing n so the agreement point is known
    for m in range(1, n):
        if m not in st["records"]:
            rr_closure(I, m, window=window, max_t=max_t, check_chain=check_chain)
    agree = st["agree_from"]
    if agree is not None and n > agree + 1:
        In = I ** n
        rec = RRRecord(n, [In.colength()], 0, In, True, served_as_power=True)
        st["records"][n] = rec
        return rec
    lengths = [(I ** n).colength()]
    prev = I ** n
    t = 0
    run = 0
    while run < window:
        t += 1
        if t > max_t:
            raise RRHorizonExhausted(f"closure of I^{n} not stable after {max_t} steps")
        cur = _chain(I, n, t)
        lc = cur.colength()
        if lc > lengths[-1]:
            raise InternalInconsistency("Ratliff-Rush chain is not ascending")
        if check_chain and not prev.issubset(cur):
            raise InternalInconsistency("Ratliff-Rush chain is not ascending")
        run = run + 1 if lc == lengths[-1] else 0
        lengths.append(lc)
        prev = cur
    stable_at = t - window
    ideal = _chain(I, n, stable_at)
    equal = lengths[stable_at] == lengths[0]
    rec = RRRecord(n, lengths, stable_at, ideal, equal)
    st["records"][n] = rec
    prev_rec = st["records"].get(n - 1)
    if equal and prev_rec is not None and prev_rec.equal_to_In and st["agree_from"] is None:
        st["agree_from"] = n - 1
    return rec


def rr_filtration(I: Ideal, dim: int | None = None, window: int = DEFAULT_WINDOW) -> Filtration:
    F = I.__dict__.get("_rr_filtration")
    if F is None or (dim is not None and F.dim != dim):
        F = Filtration.ratliff_rush(I, dim, window)
        I.__dict__["_rr_filtration"] = F
    return F


def rr_hilbert(I: Ideal, dim: int | None = None) -> HilbertData:
    key = ("_rr_hdata", dim)
    data = I.__dict__.get(key)
    if data is None:
        data = h_polynomial(rr_filtration(I, dim))
        I.__dict__[key] = data
    return data


def agreement_point_known(I: Ideal) -> int | None:
    return _state(I)["agree_from"]


def agreement_point(I: Ideal) -> int:
    """Least m with ~I^m = I^m and ~I^(m+1) = I^(m+1), computing as needed."""
    n = 1
    while _state(I)["agree_from"] is None:
        rr_closure(I, n)
        n += 1
    return _state(I)["agree_from"]


def rr_reduction_number(F: Filtration, J: Ideal, upto: int | None = None) -> tuple:
    """(r, table): the largest n with F_n != J F_(n-1), scanning n <= upto."""
    if upto is None:
        upto = agreement_point(F.base) + 2 if F.kind == "ratliff_rush" else 12
        r_adic = F.base.__dict__.get("_r_hint")
        if r_adic is not None:
            upto = max(upto, r_adic + 2)
    table = []
    r = 0
    for n in range(1, upto + 1):
        prev = F[n - 1]
        lhs = (J * prev).colength() if n > 1 else J.colength()
        rhs = F.colength(n)
        eq = lhs == rhs
        table.append({"n": n, "colength_JFn1": lhs, "colength_Fn": rhs, "equal": eq})
        if not eq:
            r = n
    return r, table


def _image(I: Ideal, x: Polynomial, dim: int) -> Ideal:
    """I R' in R' = R/(x), cached per x."""
    cache = I.__dict__.setdefault("_images", {})
    key = format_polynomial(x)
    got = cache.get(key)
    if got is None:
        ring = I.ring.quotient_by([x])
        set_dimension(ring, dim - 1)
        got = I.image_in(ring)
        cache[key] = got
    return got


@dataclass
class InvariantTable:
    value: int
    per_n: dict

    def to_dict(self) -> dict:
        return {"value": self.value, "per_n": {str(k): v for k, v in self.per_n.items()}}


def b_invariant(I: Ideal, x: Polynomial, *, dim: int | None = None, r: int | None = None,
                extra: int | None = None) -> InvariantTable:
    """b_I = sum_n l((I^{n+1} : x) / I^n)."""
    F = adic(I, dim)
    d = F.dim
    data = hilbert_data(I, dim)
    s = max(r or 0, data.eta)
    upto = s + d + 2 if extra is None else extra
    G = adic(_image(I, x, d), d - 1)
    terms = colon_defects(I, x, upto, G, dim)
    limit = upto + MAX_B_EXTENSION
    # extend until the last d+2 terms vanish
    while any(terms[n] for n in range(upto - d - 1, upto + 1)):
        upto += 1
        if upto > limit:
            raise RRHorizonExhausted(f"colon defects of x still nonzero at n = {upto}; "
                                     "x is probably not superficial")
        terms[upto] = F.colength(upto) - F.colength(upto + 1) + G.colength(upto + 1)
    return InvariantTable(sum(terms.values()), terms)


def s_invariant(I: Ideal, x: Polynomial, *, dim: int | None = None) -> InvariantTable:
    """s_I = sum_{n>=0} l(~I'^{n+1} / I'^{n+1}) in R' = R/(x)."""
    d = adic(I, dim).dim
    Ip = _image(I, x, d)
    a = agreement_point(Ip)
    terms = {}
    for n in range(0, a + 2):
        rec = rr_closure(Ip, n + 1)
        terms[n] = (Ip ** (n + 1)).colength() - rec.ideal.colength()
    return InvariantTable(sum(terms.values()), terms)


@dataclass
class BehavesWellVerdict:
    x: Polynomial
    b: InvariantTable
    s: InvariantTable
    direct: dict
    verdict: bool

    def to_dict(self) -> dict:
        return {"x": format_polynomial(self.x), "b_I": self.b.value, "s_I": self.s.value,
                "b_per_n": self.b.to_dict()["per_n"], "s_per_n": self.s.to_dict()["per_n"],
                "directly_checked": {str(k): v for k, v in self.direct.items()},
                "verdict": self.verdict}


def behaves_well(I: Ideal, x: Polynomial, *, dim: int | None = None,
                 r: int | None = None) -> BehavesWellVerdict:
    """Decide whether ~I^n R' = (I^n R')~ for all n, by b_I = s_I and directly."""
    d = adic(I, dim).dim
    b = b_invariant(I, x, dim=dim, r=r)
    s = s_invariant(I, x, dim=dim)
    if b.value > s.value:
        raise InternalInconsistency(f"b_I = {b.value} exceeds s_I = {s.value}")
    Ip = _image(I, x, d)
    ring = Ip.ring
    top = max(agreement_point(I), agreement_point(Ip)) + 2
    direct = {}
    for n in range(1, top + 1):
        # the image of ~I^n always lies inside the closure of I'^n
        img = rr_closure(I, n).ideal.image_in(ring)
        direct[n] = img.colength() == rr_closure(Ip, n).ideal.colength()
    verdict = b.value == s.value
    if verdict != all(direct.values()):
        raise InternalInconsistency("b_I = s_I disagrees with the direct comparison")
    return BehavesWellVerdict(x, b, s, direct, verdict)


@dataclass
class E3Identity:
    verdict: Verdict
    e3: int
    e3_tilde_image: int
    e3_tilde_sum: int
    b: int
    s: int
    sum_terms: dict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.to_dict(), "e3": self.e3,
                "e3_tilde_image": self.e3_tilde_image, "e3_tilde_sum": self.e3_tilde_sum,
                "b_I": self.b, "s_I": self.s,
                "sum_terms": {str(k): v for k, v in self.sum_terms.items()}}


def e3_tilde_sum(Ip: Ideal, dim: int, seed: int = 0) -> tuple:
    """sum_{n>=2} binom(n,2) l(~I'^{n+1} / J' ~I'^n) for a minimal reduction J'."""
    F = rr_filtration(Ip, dim)
    red = find_minimal_reduction(Ip, seed, dim=dim)
    Jp = red.J
    top = max(agreement_point(Ip), red.r) + 3
    terms = {}
    for n in range(0, top + 1):
        prod = Jp if n == 0 else Jp * F[n]
        terms[n] = prod.colength() - F.colength(n + 1)
    return sum(comb(n, 2) * v for n, v in terms.items()), terms


def e3_identity_check(I: Ideal, x: Polynomial, *, dim: int | None = None,
                      r: int | None = None, seed: int = 0) -> E3Identity:
    """e_3(I) = ~e_3(I') + b_I - s_I for a superficial x in dimension three."""
    d = adic(I, dim).dim
    if d != 3:
        raise ValueError("the e_3 identity is stated in dimension three")
    data = hilbert_data(I, dim)
    e3 = data.e_upto(3)[3]
    Ip = _image(I, x, d)
    rdata = rr_hilbert(Ip, d - 1)
    et = rdata.e_upto(3)[3]
    es, terms = e3_tilde_sum(Ip, d - 1, seed)
    b = b_invariant(I, x, dim=dim, r=r).value
    s = s_invariant(I, x, dim=dim).value
    v = Verdict("e3 = e3~(I') + b_I - s_I", e3, "=", et + b - s)
    v.hypothesis("superficial element", VERIFIED, "certified by window and coefficients")
    if es != et:
        raise InternalInconsistency(f"e3~(I') from the series ({et}) and the sum ({es}) differ")
    v.notes.append(f"e3~(I') = {et} from both the Hilbert series and the binomial sum")
    return E3Identity(v, e3, et, es, b, s, terms)


def rr_coefficients_agree(I: Ideal, dim: int | None = None) -> tuple:
    """(agree, adic e, RR e) comparing e_0..e_d of {I^n} and {~I^n}."""
    data = hilbert_data(I, dim)
    rdata = rr_hilbert(I, dim)
    d = data.d
    a = data.e_upto(d)
    b = rdata.e_upto(d)
    return a == b, a, b


def sandwich_check(I: Ideal, upto: int) -> dict:
    """I^n <= ~I^n, and ~I^n <= closure(I^n) for monomial I."""
    out = {}
    for n in range(1, upto + 1):
        rec = rr_closure(I, n)
        lower = (I ** n).issubset(rec.ideal)
        upper = None
        if I.is_monomial:
            upper = rec.ideal.issubset((I ** n).monomial_integral_closure())
        out[n] = {"contains_power": lower, "inside_closure": upper}
    return out


def p_agreement(I: Ideal, dim: int | None = None) -> dict:
    """n -> (l(R/~I^n), P_I(n)) for eta <= n <= computed range."""
    data = hilbert_data(I, dim)
    rdata = rr_hilbert(I, dim)
    out = {}
    for n in range(max(data.eta, 1), len(rdata.H)):
        out[n] = (rdata.H[n], data.polynomial(n))
    return out
