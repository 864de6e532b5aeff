"""Minimal reductions, reduction numbers and superficial elements.

Lengths of colons are obtained without computing the colon: for any x,

    l((I^{n+1} : x) / I^n) = H(n) - H(n+1) + l(R / (I^{n+1} + (x)))

where H(n) = l(R/I^n).  For a nonzerodivisor x the left side also equals
l((I^{n+1} cap (x)) / x I^n), which is the Valabrega-Valla defect.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .filtration import Filtration
from .hilbert import HilbertData, h_polynomial
from .ideal import (Ideal, NotMPrimary, Undetermined, _global_mingens, _to_base, krull_dimension,
                    set_dimension)
from .poly import Polynomial, format_polynomial


class ReductionError(RuntimeError):
    """No reduction (or superficial element) found within the limits."""


@dataclass
class ReductionCertificate:
    J: Ideal
    generators: list
    r: int
    checks: list
    seed: int | None = None
    draw: int | None = None
    colength_J: int | None = None
    pinned: bool = False

    def to_dict(self) -> dict:
        return {"generators": list(self.generators), "r": self.r, "checks": list(self.checks),
                "seed": self.seed, "draw": self.draw, "colength_J": self.colength_J,
                "pinned": self.pinned}


@dataclass
class SuperficialCertificate:
    x: Polynomial
    window: tuple
    colon_terms: dict
    e_check: list
    draw: int | None = None
    passed: bool = False
    image_data: HilbertData | None = None

    def to_dict(self) -> dict:
        return {"x": format_polynomial(self.x), "window": list(self.window),
                "colon_terms": {str(k): v for k, v in self.colon_terms.items()},
                "e_check": list(self.e_check), "draw": self.draw, "passed": self.passed}


# ---------------------------------------------------------------------------
# helpers


def combination_generators(I: Ideal) -> list:
    """Generators to draw random combinations from, in the ambient ring."""
    if I.is_monomial:
        return I.generators()
    if I.is_graded():
        return [_to_base(g, I.ring) for g in _global_mingens(I)]
    return I.minimal_generators()


def random_combination(gens: Sequence[Polynomial], rng: random.Random, top: int) -> Polynomial:
    ring = gens[0].ring
    out = ring.zero()
    for g in gens:
        out = out + g.scale(ring.field(rng.randint(1, top)))
    return out


def coefficient_bound(attempt: int) -> int:
    """Coefficients come from {1..7}, widening on later attempts."""
    return 7 * (1 + attempt // 4)


def adic(I: Ideal, dim: int | None = None) -> Filtration:
    F = I.__dict__.get("_adic")
    if F is None or (dim is not None and F.dim != dim):
        F = Filtration.adic(I, dim)
        I.__dict__["_adic"] = F
    return F


def hilbert_data(I: Ideal, dim: int | None = None, **kw) -> HilbertData:
    key = ("_hdata", dim)
    data = I.__dict__.get(key)
    if data is None:
        data = h_polynomial(adic(I, dim), **kw)
        I.__dict__[key] = data
    return data


def _make_ideal(ring, gens) -> Ideal:
    J = Ideal(ring, gens)
    return J.near_origin()


def product_colength(J: Ideal, I: Ideal, n: int) -> int:
    """l(R / J I^n)."""
    if n == 0:
        return J.colength()
    return (J * (I ** n)).colength()


# ---------------------------------------------------------------------------
# reductions


def reduction_number(I: Ideal, J: Ideal, horizon: int = 16, check: bool = True):
    """(r, checks): least r with I^{r+1} = J I^r, scanning n = 0..horizon."""
    if check and not J.issubset(I):
        raise ValueError("the candidate reduction is not contained in I")
    checks = []
    r = None
    for n in range(horizon + 1):
        lhs = product_colength(J, I, n)
        rhs = (I ** (n + 1)).colength()
        eq = lhs == rhs
        checks.append({"n": n, "colength_JIn": lhs, "colength_In1": rhs, "equal": eq})
        if eq:
            r = n
            break
    if r is None:
        raise ReductionError(f"not a reduction within horizon {horizon}")
    # equality propagates upwards; confirm one more step
    n = r + 1
    lhs = product_colength(J, I, n)
    rhs = (I ** (n + 1)).colength()
    checks.append({"n": n, "colength_JIn": lhs, "colength_In1": rhs, "equal": lhs == rhs})
    if lhs != rhs:
        raise AssertionError(f"I^(n+1) = J I^n at n = {r} but not at n = {n}")
    return r, checks


def find_minimal_reduction(I: Ideal, seed: int = 0, *, dim: int | None = None,
                           e0: int | None = None, retries: int = 12, horizon: int = 16,
                           pinned: Sequence | None = None) -> ReductionCertificate:
    """A d-generated reduction J of I from random combinations of generators.

    A draw is accepted when l(R/J) = e_0(I), which for a parameter ideal of
    a Cohen-Macaulay ring is exactly the condition for J to be a reduction.
    """
    ring = I.ring
    d = krull_dimension(ring) if dim is None else dim
    if e0 is None:
        e0 = hilbert_data(I, dim).e[0]
    if pinned is not None:
        gens = [ring(g) if isinstance(g, str) else g for g in pinned]
        J = _make_ideal(ring, gens)
        r, checks = reduction_number(I, J, horizon)
        cert = ReductionCertificate(J, [format_polynomial(g) for g in gens], r, checks,
                                    pinned=True, colength_J=J.colength())
        return cert
    rng = random.Random(seed)
    pool = combination_generators(I)
    if len(pool) <= d:
        gens = [_to_base(g, ring) for g in pool]
        J = _make_ideal(ring, gens)
        r, checks = reduction_number(I, J, horizon, check=False)
        return ReductionCertificate(J, [format_polynomial(g) for g in gens], r, checks,
                                    seed, 0, J.colength())
    failures = []
    for attempt in range(retries):
        top = coefficient_bound(attempt)
        gens = [random_combination(pool, rng, top) for _ in range(d)]
        try:
            J = _make_ideal(ring, gens)
            lj = J.colength()
        except (NotMPrimary, Undetermined) as exc:
            failures.append({"draw": attempt, "reason": str(exc)})
            continue
        if lj != e0:
            failures.append({"draw": attempt, "reason": f"l(R/J) = {lj} != e0 = {e0}"})
            continue
        r, checks = reduction_number(I, J, horizon, check=False)
        return ReductionCertificate(J, [format_polynomial(g) for g in gens], r, checks,
                                    seed, attempt, lj)
    raise ReductionError(f"no minimal reduction after {retries} draws: {failures}")


def v_n(F, J: Ideal, n: int, check: bool = False) -> int:
    """l(I_{n+1} / J I_n)."""
    if isinstance(F, Ideal):
        F = adic(F)
    In = F[n]
    prod = J if n == 0 else J * In
    nxt = F[n + 1]
    if check and not prod.issubset(nxt):
        raise ValueError("J I_n is not contained in I_{n+1}")
    return prod.colength() - nxt.colength()


# ---------------------------------------------------------------------------
# superficial elements


def colon_defects(I: Ideal, x: Polynomial, upto: int, image: Filtration | None = None,
                  dim: int | None = None) -> dict:
    """n -> l((I^{n+1} : x) / I^n) for 0 <= n <= upto."""
    F = adic(I, dim)
    G = image if image is not None else Filtration.image(F, [x])
    out = {}
    for n in range(upto + 1):
        out[n] = F.colength(n) - F.colength(n + 1) + G.colength(n + 1)
    return out


def certify_superficial(I: Ideal, x: Polynomial, *, r: int, dim: int | None = None,
                        data: HilbertData | None = None, draw: int | None = None
                        ) -> SuperficialCertificate:
    """Finite evidence that x is superficial for I.

    Checks (I^{n+1} : x) = I^n for s < n <= s + d + 2, s = max(r, eta),
    and e_i(I) = e_i(I R/(x)) for 0 <= i <= d - 1.
    """
    F = adic(I, dim)
    d = F.dim
    data = data or hilbert_data(I, dim)
    G = Filtration.image(F, [x])
    s = max(r, data.eta)
    lo, hi = s + 1, s + d + 2
    terms = colon_defects(I, x, hi, G, dim)
    img = h_polynomial(G, min_length=hi + 1)
    e_check = [img.e[i] == data.e[i] if i < len(img.e) else data.e[i] == 0 for i in range(d)]
    ok = all(terms[n] == 0 for n in range(lo, hi + 1)) and all(e_check)
    return SuperficialCertificate(x, (lo, hi), terms, e_check, draw, ok, img)


def find_superficial_sequence(I: Ideal, count: int, seed: int = 0, *, dim: int | None = None,
                              retries: int = 8, pinned: Sequence | None = None) -> list:
    """Elements x_1..x_count, each superficial modulo the previous ones."""
    d = krull_dimension(I.ring) if dim is None else dim
    if count > d:
        raise ValueError("a superficial sequence has at most d elements")
    rng = random.Random(seed)
    out = []
    cur, cur_dim = I, d
    for k in range(count):
        data = hilbert_data(cur, cur_dim)
        red = find_minimal_reduction(cur, rng.randrange(1 << 30), dim=cur_dim, e0=data.e[0])
        cands = []
        if pinned is not None and k < len(pinned):
            p = pinned[k]
            cands.append((None, cur.ring(p) if isinstance(p, str) else cur.ring.base.convert(p)))
        pool = combination_generators(cur)
        for attempt in range(retries):
            cands.append((attempt, random_combination(pool, rng, coefficient_bound(attempt))))
        cert = None
        for draw, x in cands:
            c = certify_superficial(cur, x, r=red.r, dim=cur_dim, data=data, draw=draw)
            if c.passed:
                cert = c
                break
        if cert is None:
            raise ReductionError(f"no superficial element found at step {k + 1}")
        out.append((cert.x, cert))
        cur = adic(cur, cur_dim)[1].image_in(cur.ring.quotient_by([cert.x]))
        cur_dim -= 1
        set_dimension(cur.ring, cur_dim)
    return out


# ---------------------------------------------------------------------------
# depth of the associated graded ring


@dataclass
class VVResult:
    passed: bool
    horizon: int
    defects: dict
    direct: dict | None = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "horizon": self.horizon,
                "defects": {str(k): v for k, v in self.defects.items()},
                "label": f"verified to horizon {self.horizon}" if self.passed else "fails"}


def valabrega_valla_test(I: Ideal, x: Polynomial, horizon: int | None = None, *,
                         dim: int | None = None, r: int | None = None,
                         direct: bool = False) -> VVResult:
    """Check I^{n+1} cap (x) = x I^n for 0 <= n <= horizon.

    The defect at n is l((I^{n+1} : x)/I^n); ``direct=True`` additionally
    compares the intersection with x I^n ideal-theoretically.
    """
    F = adic(I, dim)
    d = F.dim
    if horizon is None:
        data = hilbert_data(I, dim)
        rr = 0 if r is None else r
        horizon = max(data.eta + d + 2, rr + d + 2)
    defects = colon_defects(I, x, horizon, None, dim)
    passed = all(v == 0 for v in defects.values())
    res = VVResult(passed, horizon, defects)
    if direct:
        X = Ideal(I.ring, [x]).near_origin() if not I.is_capped else \
            Ideal(I.ring, [x], cap=I.cap, complete=True)
        table = {}
        for n in range(horizon + 1):
            left = (I ** (n + 1)).intersect(X) if n + 1 > 0 else X
            right = X * (I ** n) if n > 0 else X
            table[n] = left == right
        res.direct = table
        if all(table.values()) != passed:
            raise AssertionError("Valabrega-Valla routes disagree")
    return res


@dataclass
class DepthBound:
    value: int
    chain: list
    failures: list
    horizon_label: str = ""

    def to_dict(self) -> dict:
        return {"value": self.value, "chain": list(self.chain), "failures": list(self.failures),
                "label": self.horizon_label}


def depth_G_lower_bound(I: Ideal, seed: int = 0, *, dim: int | None = None,
                        retries: int = 3) -> DepthBound:
    """Greedy chain of superficial elements passing the Valabrega-Valla test.

    Each successful round certifies one more unit of depth of G(I), up to
    the horizon used in that round.
    """
    d = krull_dimension(I.ring) if dim is None else dim
    rng = random.Random(seed)
    cur, cur_dim = I, d
    chain, failures = [], []
    horizons = []
    while cur_dim > 0:
        data = hilbert_data(cur, cur_dim)
        red = find_minimal_reduction(cur, rng.randrange(1 << 30), dim=cur_dim, e0=data.e[0])
        pool = combination_generators(cur)
        passed = None
        for attempt in range(retries):
            x = random_combination(pool, rng, coefficient_bound(attempt))
            cert = certify_superficial(cur, x, r=red.r, dim=cur_dim, data=data, draw=attempt)
            if not cert.passed:
                failures.append({"round": len(chain) + 1, "draw": attempt,
                                 "x": format_polynomial(x), "reason": "not superficial"})
                continue
            vv = valabrega_valla_test(cur, x, dim=cur_dim, r=red.r)
            if vv.passed:
                passed = (x, vv)
                break
            bad = min(n for n, v in vv.defects.items() if v)
            failures.append({"round": len(chain) + 1, "draw": attempt,
                             "x": format_polynomial(x), "reason": f"defect at n = {bad}",
                             "defects": {str(k): v for k, v in vv.defects.items()}})
        if passed is None:
            break
        x, vv = passed
        chain.append({"x": format_polynomial(x), "horizon": vv.horizon})
        horizons.append(vv.horizon)
        ring = cur.ring.quotient_by([x])
        set_dimension(ring, cur_dim - 1)
        cur = cur.image_in(ring)
        cur_dim -= 1
    label = ""
    if horizons:
        label = "verified to horizon " + ",".join(str(h) for h in horizons)
    return DepthBound(len(chain), chain, failures, label)
