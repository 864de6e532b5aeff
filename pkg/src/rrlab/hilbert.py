"""Hilbert-Samuel functions, h-polynomials and Hilbert coefficients.

Conventions: ``H(n) = l(R/I_n)`` with ``H(0) = 0``;
``H(I, t) = sum l(I_n/I_{n+1}) t^n = h(t)/(1-t)^d``;
``e_i = h^(i)(1)/i!`` for every ``i >= 0``; and

    P(n) = sum_{i=0}^{d} (-1)^i e_i binom(n+d-1-i, d-i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .filtration import Filtration
from .ideal import Ideal


class HorizonExhausted(RuntimeError):
    """The numerator did not stabilize before the horizon; carries the table."""

    def __init__(self, message: str, H: list):
        super().__init__(message)
        self.H = H


class InconsistentHilbertData(RuntimeError):
    """An internal cross-check between independent derivations failed."""


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient, a polynomial in ``n`` of degree ``k``."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= n - j
    den = 1
    for j in range(2, k + 1):
        den *= j
    return num // den


def default_horizon(d: int, r: int | None = None) -> int:
    if r is None:
        return 12
    return max(12, 2 * r + d + 4)


@dataclass
class HilbertData:
    d: int
    H: list
    h: list
    e: list
    eta: int
    stabilization: dict = field(default_factory=dict)

    @property
    def colength(self) -> int:
        return self.H[1] if len(self.H) > 1 else 0

    def e_upto(self, k: int) -> list:
        return [coefficient(self.h, i) for i in range(k + 1)]

    def polynomial(self, n: int) -> int:
        return hilbert_polynomial_value(self.e, self.d, n)

    def to_dict(self) -> dict:
        return {"d": self.d, "H": list(self.H), "h_poly": list(self.h), "e": list(self.e),
                "eta": self.eta, "stabilization": dict(self.stabilization)}

    @classmethod
    def from_dict(cls, data: dict) -> "HilbertData":
        return cls(data["d"], list(data["H"]), list(data["h_poly"]), list(data["e"]),
                   data["eta"], dict(data.get("stabilization", {})))


# ---------------------------------------------------------------------------
# pure arithmetic on H tables


def numerator(H: Sequence[int], d: int) -> list:
    """Coefficients c_0..c_(N-1) of (1-t)^d sum a_n t^n, a_n = H(n+1) - H(n)."""
    a = [H[n + 1] - H[n] for n in range(len(H) - 1)]
    for _ in range(d):
        a = [a[0]] + [a[n] - a[n - 1] for n in range(1, len(a))] if a else a
    return a


def trim(c: Sequence[int]) -> list:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def coefficient(h: Sequence[int], i: int) -> int:
    """e_i = h^(i)(1)/i! = sum_n binom(n, i) c_n."""
    return sum(comb(n, i) * c for n, c in enumerate(h))


def hilbert_polynomial_value(e: Sequence[int], d: int, n: int) -> int:
    return sum((-1) ** i * e[i] * binom(n + d - 1 - i, d - i) for i in range(d + 1))


def postulation(H: Sequence[int], e: Sequence[int], d: int) -> int:
    """Least integer n with P(m) = H(m) for all m >= n (H(m) = 0 for m <= 0)."""
    def Hval(m):
        return H[m] if m > 0 else 0

    n = len(H) - 1
    while n >= 0 and hilbert_polynomial_value(e, d, n) == Hval(n):
        n -= 1
    if n >= 0:
        return n + 1
    # P is a nonzero polynomial, so the scan below 0 terminates
    while hilbert_polynomial_value(e, d, n) == 0:
        n -= 1
    return n + 1


def binomial_fit(H: Sequence[int], d: int, start: int) -> list:
    """e_0..e_d from H(start..start+d) by exact interpolation in the binomial basis."""
    rows = []
    for m in range(start, start + d + 1):
        rows.append([Fraction((-1) ** i * binom(m + d - 1 - i, d - i)) for i in range(d + 1)]
                    + [Fraction(H[m])])
    n = d + 1
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    out = []
    for r in range(n):
        v = rows[r][-1]
        if v.denominator != 1:
            raise InconsistentHilbertData("non-integral Hilbert coefficient from the fit")
        out.append(int(v))
    return out


# ---------------------------------------------------------------------------
# filtration-level operations


def _as_filtration(F) -> Filtration:
    if isinstance(F, Ideal):
        return Filtration.adic(F)
    return F


def hilbert_function(F, n: int) -> int:
    """H(n) = l(R/I_n)."""
    return _as_filtration(F).colength(n)


def second_hilbert(F, n: int) -> int:
    """sum_{i=0}^{n} H(i)."""
    F = _as_filtration(F)
    return sum(F.colength(i) for i in range(n + 1))


def h_polynomial(F, *, horizon: int | None = None, window: int | None = None,
                 min_length: int = 0, r: int | None = None) -> HilbertData:
    """Numerator of the Hilbert series with a stabilization certificate.

    Values H(n) are computed until the last ``window`` (default d+2)
    numerator coefficients vanish and at least ``min_length`` values
    (raised to r+d+2 when a reduction number is known) exist.  Running past
    ``horizon`` raises :class:`HorizonExhausted` with the partial table.
    """
    F = _as_filtration(F)
    d = F.dim
    window = d + 2 if window is None else window
    if r is not None:
        min_length = max(min_length, r + d + 2)
    if horizon is None:
        horizon = max(default_horizon(d, r), min_length + window + 1)
    H = [0]
    while True:
        n = len(H)
        if n > horizon + 1:
            raise HorizonExhausted(
                f"numerator not stable after H({horizon}); raise the horizon", H)
        H.append(F.colength(n))
        c = numerator(H, d)
        if len(c) >= window + 1 and len(H) - 1 >= min_length and \
                all(v == 0 for v in c[-window:]) and any(c):
            break
    h = trim(c)
    e = [coefficient(h, i) for i in range(d + 1)]
    start = len(c) - window
    fit = binomial_fit(H, d, max(start, 1)) if len(H) > max(start, 1) + d else None
    if fit is not None and fit != e[:d + 1]:
        raise InconsistentHilbertData(f"h-derivatives {e[:d + 1]} disagree with the fit {fit}")
    if h and h[0] != H[1]:
        raise InconsistentHilbertData("h(0) differs from l(R/I_1)")
    eta = postulation(H, e, d)
    # the d-th difference of H is e_0 on the stabilized window
    diffs = list(H)
    for _ in range(d):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    tail = diffs[max(start, 0):]
    stab = {"window_start": start, "window_length": window, "computed_to": len(H) - 1,
            "verified": fit is not None and all(v == e[0] for v in tail)}
    return HilbertData(d, H, h, e, eta, stab)


def hilbert_coefficients(F, k: int, **kw) -> list:
    data = F if isinstance(F, HilbertData) else h_polynomial(F, **kw)
    return data.e_upto(k)


def postulation_number(F, **kw) -> int:
    data = F if isinstance(F, HilbertData) else h_polynomial(F, **kw)
    return data.eta


def delta(f, n: int) -> int:
    """Forward difference f(n+1) - f(n)."""
    return f(n + 1) - f(n)


# ---------------------------------------------------------------------------
# powers


def power_coefficients(e: Sequence[int], d: int, q: int) -> list:
    """e_i(I^q), 0 <= i <= d, from P_{I^q}(n) = P_I(qn) in the binomial basis."""
    H = [hilbert_polynomial_value(e, d, q * n) for n in range(d + 2)]
    return binomial_fit(H, d, 1)


def epsilon_closed_forms(e: Sequence[int], q: int) -> list:
    """The d = 4 closed forms for e_i(I^q), 0 <= i <= 3, exact rationals."""
    e0, e1, e2, e3 = (Fraction(v) for v in e[:4])
    q = Fraction(q)
    eps0 = e0 * q ** 4
    eps1 = Fraction(3, 2) * e0 * (q ** 4 - q ** 3) + e1 * q ** 3
    eps2 = e0 / 12 * (11 * q ** 2 + 7 * q ** 4 - 18 * q ** 3) + e1 * (q ** 3 - q ** 2) + e2 * q ** 2
    qi = int(q)
    eps3 = e0 * comb(qi, 4) + e1 * comb(qi, 3) + e2 * comb(qi, 2) + e3 * q
    return [eps0, eps1, eps2, eps3]


@dataclass
class PowerIdentities:
    q: int
    d: int
    eta: int
    applicable: bool
    epsilon: list
    predicted: list
    binomial: list
    colength_power: int
    e3_via_power: int | None = None
    e4_via_power: Fraction | None = None
    e_target: int | None = None
    agree: bool = True
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "q": self.q, "d": self.d, "eta": self.eta, "applicable": self.applicable,
            "epsilon": list(self.epsilon), "predicted": [str(v) for v in self.predicted],
            "binomial": list(self.binomial), "colength_power": self.colength_power,
            "e3_via_power": self.e3_via_power,
            "e4_via_power": None if self.e4_via_power is None else str(self.e4_via_power),
            "agree": self.agree, "notes": list(self.notes),
        }


def power_identities(I: Ideal, q: int, data: HilbertData | None = None,
                     dim: int | None = None) -> PowerIdentities:
    """Compare e_i(I^q) computed directly with the rescaling formulas."""
    if q < 1:
        raise ValueError("q must be positive")
    F = Filtration.adic(I, dim)
    data = data or h_polynomial(F)
    d = data.d
    if d not in (3, 4):
        raise ValueError("power identities are stated for dimension 3 or 4")
    Fq = Filtration.adic(I ** q, d)
    direct = h_polynomial(Fq)
    eps = direct.e[:d + 1]
    binom_pred = power_coefficients(data.e, d, q)
    lq = Fq.colength(1)
    applicable = q >= data.eta
    out = PowerIdentities(q, d, data.eta, applicable, eps, [], binom_pred, lq)
    ok = eps == binom_pred
    if not ok:
        out.notes.append("direct coefficients of I^q differ from the rescaled polynomial")
    if d == 4:
        pred = epsilon_closed_forms(data.e, q)
        out.predicted = pred
        if [Fraction(v) for v in eps[:4]] != pred:
            ok = False
            out.notes.append("closed forms for epsilon_0..epsilon_3 disagree with direct values")
        e4 = pred[3] - pred[2] + pred[1] - pred[0] + lq
        out.e4_via_power = e4
        out.e_target = data.e[4] if len(data.e) > 4 else 0
        if applicable and e4 != out.e_target:
            ok = False
            out.notes.append("e_4 via the power differs from e_4(I)")
    else:
        out.predicted = [Fraction(v) for v in binom_pred]
        e3 = eps[2] - eps[1] + eps[0] - lq
        out.e3_via_power = e3
        out.e_target = data.e[3] if len(data.e) > 3 else 0
        if applicable and e3 != out.e_target:
            ok = False
            out.notes.append("e_3 via the power differs from e_3(I)")
    if not applicable:
        out.notes.append(f"q = {q} is below the postulation number {data.eta}")
    out.agree = ok
    return out
