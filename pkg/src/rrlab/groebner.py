"""Buchberger's algorithm, normal forms and reduced Groebner bases.

Two regimes share one engine:

* global orders (grevlex, lex, grlex, elim) with no truncation, and
* the local order with a degree cap ``c``: the computation takes place in
  ``S / m^c`` where every term of degree ``>= c`` is discarded.  For an ideal
  containing ``m^c`` near the origin this computes its local standard basis.

Polynomials inside the engine are plain dicts ``packed monomial -> coeff``.
"""

from __future__ import annotations

import heapq
import threading
from itertools import count
from typing import Iterable, Sequence

from .poly import Polynomial, Ring


class _Reducers:
    """Grow-only reducer list with cached divisor lookups."""

    __slots__ = ("guard", "lms", "tails", "cache")

    def __init__(self, guard: int):
        self.guard = guard
        self.lms: list = []
        self.tails: list = []
        # monomial -> index of a reducer, or ~k meaning "no reducer among
        # the first k elements"
        self.cache: dict = {}

    def add(self, lm: int, tail: list):
        self.lms.append(lm)
        self.tails.append(tail)

    def find(self, m: int) -> int:
        r = self.cache.get(m)
        if r is not None:
            if r >= 0:
                return r
            start = ~r
        else:
            start = 0
        G = self.guard
        g = m | G
        lms = self.lms
        for i in range(start, len(lms)):
            if (g - lms[i]) & G == G:
                self.cache[m] = i
                return i
        self.cache[m] = ~len(lms)
        return -1


def _truncate(terms: dict, lo) -> dict:
    if lo is None:
        return terms
    return {m: c for m, c in terms.items() if m >= lo}


def _reduce(terms: dict, red: _Reducers, p: int, lo, full: bool = True) -> dict:
    """Reduce ``terms`` by monic reducers; terms below ``lo`` are dropped."""
    if lo is None:
        h = dict(terms)
    else:
        h = {m: c for m, c in terms.items() if m >= lo}
    heap = [-m for m in h]
    heapq.heapify(heap)
    out: dict = {}
    find = red.find
    lms = red.lms
    tails = red.tails
    pop = heapq.heappop
    push = heapq.heappush
    hget = h.get
    while heap:
        m = -pop(heap)
        c = h.pop(m, 0)
        if not c:
            continue
        i = find(m)
        if i < 0:
            out[m] = c
            if not full:
                for mm in h:
                    if h[mm]:
                        out[mm] = h[mm]
                return out
            continue
        q = m - lms[i]
        if p:
            for mg, cg in tails[i]:
                mm = mg + q
                if lo is not None and mm < lo:
                    break
                v = hget(mm)
                if v is None:
                    h[mm] = (-c * cg) % p
                    push(heap, -mm)
                else:
                    v = (v - c * cg) % p
                    if v:
                        h[mm] = v
                    else:
                        del h[mm]
        else:
            for mg, cg in tails[i]:
                mm = mg + q
                if lo is not None and mm < lo:
                    break
                v = hget(mm)
                if v is None:
                    h[mm] = -c * cg
                    push(heap, -mm)
                else:
                    v = v - c * cg
                    if v:
                        h[mm] = v
                    else:
                        del h[mm]
    return out


def _monic(terms: dict, p: int):
    lm = max(terms)
    c = terms[lm]
    if p:
        if c != 1:
            inv = pow(c, -1, p)
            terms = {m: v * inv % p for m, v in terms.items()}
    elif c != 1:
        inv = 1 / c
        terms = {m: v * inv for m, v in terms.items()}
    return lm, terms


def _tail(terms: dict, lm: int) -> list:
    return sorted(((m, c) for m, c in terms.items() if m != lm), reverse=True)


class _Element:
    __slots__ = ("lm", "terms", "sugar", "homog", "exps")

    def __init__(self, lm, terms, sugar, homog, exps):
        self.lm = lm
        self.terms = terms
        self.sugar = sugar
        self.homog = homog
        self.exps = exps


def _poly_sugar(terms: dict, pk) -> int:
    if pk.local:
        return pk.tdeg(max(terms))
    return max(pk.tdeg(m) for m in terms)


def _is_homog(terms: dict, pk) -> bool:
    it = iter(terms)
    d = pk.tdeg(next(it))
    return all(pk.tdeg(m) == d for m in it)


def buchberger(ring: Ring, gens: Sequence[dict], cap=None,
               seed: Sequence[dict] = (), stats: dict | None = None):
    """Groebner basis of ``seed + gens`` (``seed`` must already be a basis).

    Returns ``(basis, kept)`` where ``basis`` is the reduced basis as a list
    of monic term dicts sorted by leading monomial and ``kept`` lists the
    indices of ``gens`` that did not reduce to zero when processed.  Those
    generators, with ``seed``, generate the ideal modulo ``m^cap``.
    """
    pk = ring.packing
    p = ring.field.p
    local = pk.local
    if local and cap is None:
        raise ValueError("the local order needs a degree cap")
    lo = pk.keep_bound(cap) if local else None
    guard = pk.guard
    unpack = pk.unpack
    nv = pk.nvars
    weights = pk.weights

    def pack(exps):
        m = 0
        for e, w in zip(exps, weights):
            m += e * w
        return m

    red = _Reducers(guard)
    elems: list = []
    active: list = []  # indices of elements whose lm is currently minimal
    pairs: list = []  # heap of (sugar, lcm, tiebreak, i, j); j < 0 -> generator
    alive: dict = {}  # pair id -> True
    pair_info: dict = {}  # pair id -> (lcm, i, j)
    tick = count()
    kept: list = []
    gen_list = []

    for terms in seed:
        t = _truncate(terms, lo)
        if not t:
            continue
        lm, t = _monic(t, p)
        e = _Element(lm, t, _poly_sugar(t, pk), _is_homog(t, pk), unpack(lm))
        elems.append(e)
        red.add(lm, _tail(t, lm))
    # seed elements are a basis already: only keep the minimal ones active
    for idx, e in enumerate(elems):
        if not any(j != idx and pk.divides(elems[j].lm, e.lm) and
                   (elems[j].lm != e.lm or j < idx) for j in range(len(elems))):
            active.append(idx)

    for gi, terms in enumerate(gens):
        t = _truncate(terms, lo)
        if not t:
            continue
        gen_list.append(gi)
        pid = next(tick)
        lm = max(t)
        heapq.heappush(pairs, (_poly_sugar(t, pk), lm, pid))
        alive[pid] = True
        pair_info[pid] = (None, gi, t)

    def lcm_exps(a, b):
        return [x if x > y else y for x, y in zip(a, b)]

    def add_element(t: dict, sugar: int):
        lm, t = _monic(t, p)
        exps = unpack(lm)
        homog = _is_homog(t, pk)
        h = len(elems)
        elems.append(_Element(lm, t, sugar, homog, exps))
        red.add(lm, _tail(t, lm))
        # Gebauer-Moeller update
        cand = []
        for i in active:
            e = elems[i]
            lx = lcm_exps(e.exps, exps)
            lcm = pack(lx)
            coprime = all(a == 0 or b == 0 for a, b in zip(e.exps, exps))
            if local:
                s = sum(lx)
            else:
                s = max(e.sugar + sum(lx) - sum(e.exps), sugar + sum(lx) - sum(exps))
            use_product = coprime and (not local or (e.homog and homog))
            cand.append((lcm, i, s, use_product))
        # drop old pairs made redundant by the new leading monomial
        G = guard
        for pid, (lcm_ij, i, j) in list(pair_info.items()):
            if lcm_ij is None or not alive.get(pid):
                continue
            if ((lcm_ij | G) - lm) & G == G:
                li = pack(lcm_exps(elems[i].exps, exps))
                lj = pack(lcm_exps(elems[j].exps, exps))
                if li != lcm_ij and lj != lcm_ij:
                    alive[pid] = False
                    del pair_info[pid]
        # chain criterion among the new pairs
        cand.sort(key=lambda c: c[0])
        keep = []
        lcms = [c[0] for c in cand]
        by_lcm: dict = {}
        for c in cand:
            by_lcm.setdefault(c[0], []).append(c)
        for lcm, group in by_lcm.items():
            redundant = False
            g_l = lcm | G
            for other in by_lcm:
                if other != lcm and (g_l - other) & G == G:
                    redundant = True
                    break
            if redundant:
                continue
            if any(c[3] for c in group):
                continue
            keep.append(group[0])
        del lcms
        for lcm, i, s, _ in keep:
            if lo is not None and lcm < lo:
                continue
            pid = next(tick)
            heapq.heappush(pairs, (s, lcm, pid))
            alive[pid] = True
            pair_info[pid] = (lcm, i, h)
        active[:] = [i for i in active if not pk.divides(lm, elems[i].lm)]
        active.append(h)

    n_red = 0
    while pairs:
        s, lcm, pid = heapq.heappop(pairs)
        if not alive.pop(pid, False):
            continue
        info = pair_info.pop(pid)
        if info[0] is None:
            gi, t = info[1], info[2]
            r = _reduce(t, red, p, lo)
            n_red += 1
            if r:
                kept.append(gi)
                add_element(r, max(s, _poly_sugar(r, pk)) if not local else _poly_sugar(r, pk))
            continue
        _, i, j = info
        ei, ej = elems[i], elems[j]
        qi = lcm - ei.lm
        qj = lcm - ej.lm
        spoly: dict = {}
        if p:
            for m, c in ei.terms.items():
                mm = m + qi
                if lo is None or mm >= lo:
                    spoly[mm] = c
            for m, c in ej.terms.items():
                mm = m + qj
                if lo is not None and mm < lo:
                    continue
                v = spoly.get(mm, 0) - c
                v %= p
                if v:
                    spoly[mm] = v
                else:
                    spoly.pop(mm, None)
        else:
            for m, c in ei.terms.items():
                mm = m + qi
                if lo is None or mm >= lo:
                    spoly[mm] = c
            for m, c in ej.terms.items():
                mm = m + qj
                if lo is not None and mm < lo:
                    continue
                v = spoly.get(mm, 0) - c
                if v:
                    spoly[mm] = v
                else:
                    spoly.pop(mm, None)
        r = _reduce(spoly, red, p, lo)
        n_red += 1
        if r:
            add_element(r, s if not local else _poly_sugar(r, pk))

    basis = [elems[i] for i in active]
    if stats is not None:
        stats["reductions"] = n_red
        stats["elements"] = len(elems)
    return _interreduce(basis, pk, p, lo), kept


def _interreduce(basis: list, pk, p: int, lo) -> list:
    """Fully reduce a minimal basis; result sorted by leading monomial."""
    basis = sorted(basis, key=lambda e: e.lm)
    red = _Reducers(pk.guard)
    for e in basis:
        red.add(e.lm, _tail(e.terms, e.lm))
    out = []
    for e in basis:
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        rt = _reduce(tail, red, p, lo) if tail else {}
        rt[e.lm] = 1 if p else e.terms[e.lm]
        out.append(rt)
    return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal of ``ring`` (possibly capped).

    With the local order and a cap ``c`` the basis describes ``I + m^c``;
    monomials of degree ``>= c`` are implicitly in the ideal.
    """

    def __init__(self, ring: Ring, elements: Sequence[dict], cap=None):
        self.ring = ring
        self.cap = cap
        self.elements = [dict(e) for e in elements]
        self.lms = [max(e) for e in self.elements]
        pk = ring.packing
        self._lo = pk.keep_bound(cap) if pk.local else None
        self._red = None
        self._lock = threading.Lock()

    # construction ------------------------------------------------------

    @classmethod
    def compute(cls, ring: Ring, gens: Iterable, cap=None, seed: "GroebnerBasis" = None):
        terms = [g.terms if isinstance(g, Polynomial) else g for g in gens]
        seed_terms = seed.elements if seed is not None else ()
        basis, _ = buchberger(ring, terms, cap, seed_terms)
        return cls(ring, basis, cap)

    def _reducers(self) -> _Reducers:
        r = self._red
        if r is None:
            with self._lock:
                if self._red is None:
                    r = _Reducers(self.ring.packing.guard)
                    for e, lm in zip(self.elements, self.lms):
                        r.add(lm, _tail(e, lm))
                    self._red = r
                r = self._red
        return r

    @property
    def polys(self) -> list:
        return [Polynomial(self.ring, e) for e in self.elements]

    @property
    def reduced(self) -> bool:
        return True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.ring.poly_key() == other.ring.poly_key() and self.cap == other.cap
                and self.elements == other.elements)

    # queries -----------------------------------------------------------

    def reduce_terms(self, terms: dict) -> dict:
        if not self.elements:
            return _truncate(dict(terms), self._lo)
        return _reduce(terms, self._reducers(), self.ring.field.p, self._lo)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring.poly_key() != self.ring.poly_key():
            raise ValueError("normal form needs matching ring and order")
        return Polynomial(self.ring, self.reduce_terms(f.terms))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce_terms(f.terms)

    def is_unit(self) -> bool:
        pk = self.ring.packing
        one = pk.pack([0] * pk.nvars)
        return one in self.lms

    def truncated(self, cap) -> "GroebnerBasis":
        """The basis of ``I + m^cap`` for a smaller cap (local order only)."""
        if self.cap is not None and cap >= self.cap:
            return self
        pk = self.ring.packing
        lo = pk.keep_bound(cap)
        out = []
        for e, lm in zip(self.elements, self.lms):
            if lm >= lo:
                out.append({m: c for m, c in e.items() if m >= lo})
        return GroebnerBasis(self.ring, out, cap)


def reduced_groebner(gens: Sequence[Polynomial], order: str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the ring")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring.poly_key()[:2] != ring.poly_key()[:2]:
            raise ValueError("generators lie in different rings")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    gens = [ring.convert(g) for g in gens]
    return GroebnerBasis.compute(ring.base if ring.is_quotient else ring, gens)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial of two nonzero polynomials (for criterion checks)."""
    ring = f.ring
    pk = ring.packing
    lf, lg = f.lm(), g.lm()
    lcm = pk.lcm(lf, lg)
    fld = ring.field
    a = f.mul_term(lcm - lf, fld.inv(f.lc()))
    b = g.mul_term(lcm - lg, fld.inv(g.lc()))
    return a - b
