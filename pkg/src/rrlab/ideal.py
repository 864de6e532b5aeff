"""Ideals of (quotients of) polynomial rings and their calculus.

An :class:`Ideal` is either

* *global*: generators only, computed with a Groebner basis in the ring's
  own order; or
* *capped*: generators plus ``m^cap``.  The ideal is then m-primary at the
  origin and all computations take place in the local order truncated at
  the cap, so lengths are lengths of the localization.

Monomial ideals of polynomial rings take a combinatorial fast path.
"""

from __future__ import annotations

import heapq
from itertools import combinations
import threading
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import monomial as mono
from .groebner import GroebnerBasis, _Element, _interreduce, _reduce, _Reducers, buchberger
from .poly import Polynomial, Ring


class NotMPrimary(ValueError):
    """Raised when a length is requested for an ideal of infinite colength."""


class Undetermined(ValueError):
    """Raised when a search bound is hit before a decision."""


@dataclass
class PrimaryCertificate:
    """Outcome of the m-primary test.

    ``status`` is ``"positive"``, ``"negative"`` or ``"undetermined"``;
    ``exponents[i]`` is an ``N`` with ``x_i^N`` in the ideal when positive.
    ``local`` marks certificates that hold after localizing at the origin.
    """

    status: str
    exponents: tuple = ()
    local: bool = False
    reason: str = ""

    def __bool__(self):
        return self.status == "positive"


# ---------------------------------------------------------------------------
# ring-level caches


def local_ring(ring: Ring) -> Ring:
    r = ring._cache.get("local_ring")
    if r is None:
        base = ring.base
        r = ring._cache["local_ring"] = Ring(base.variables, base.field, "local")
    return r


def _convert_terms(terms: dict, src, dst) -> dict:
    if src is dst:
        return terms
    unpack, pack = src.unpack, dst.pack
    return {pack(unpack(m)): c for m, c in terms.items()}


def _quotient_local_basis(ring: Ring, cap: int) -> list:
    """Local standard basis of the defining ideal plus m^cap."""
    if not ring.quotient:
        return []
    lr = local_ring(ring)
    cache = ring._cache.setdefault("quot_local", {})
    best = None
    for c in cache:
        if c >= cap and (best is None or c < best):
            best = c
    if best is None:
        # compute with some headroom so that nearby caps reuse the result
        big = max(cap, max(cache, default=0) + 4)
        gens = [_convert_terms(q.terms, ring.base.packing, lr.packing) for q in ring.quotient]
        basis, _ = buchberger(lr, gens, big)
        cache[big] = basis
        best = big
    basis = cache[best]
    if best == cap:
        return basis
    lo = lr.packing.keep_bound(cap)
    return [{m: c for m, c in e.items() if m >= lo} for e in basis if max(e) >= lo]


def _quotient_global_basis(ring: Ring) -> list:
    if not ring.quotient:
        return []
    b = ring._cache.get("quot_global")
    if b is None:
        base = ring.base
        b, _ = buchberger(base, [q.terms for q in ring.quotient])
        ring._cache["quot_global"] = b
    return b


def _is_homog_terms(terms: dict, pk) -> bool:
    degs = {sum(pk.unpack(m)) for m in terms}
    return len(degs) <= 1


# ---------------------------------------------------------------------------
# sparse linear algebra shared by colon and intersection


def _kernel(basis: Sequence[dict], image, p: int) -> list:
    """Kernel of a linear map on the span of ``basis``.

    ``basis`` lists polynomials with strictly increasing leading monomials;
    ``image(j)`` returns the image of ``basis[j]`` as a dict with integer
    keys.  Returns kernel polynomials; each has the leading monomial of the
    newest basis element it involves, so the leading monomials are distinct.
    """
    pivots: dict = {}  # key -> (img, combo), img monic at key
    kernel = []
    for j, b in enumerate(basis):
        img = image(j)
        combo = {j: 1}
        # eliminate from the largest key downwards
        heap = [-k for k in img]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = img.get(k)
            if not c:
                continue
            piv = pivots.get(k)
            if piv is None:
                inv = pow(c, -1, p) if p else 1 / c
                if p:
                    img = {kk: v * inv % p for kk, v in img.items()}
                    combo = {kk: v * inv % p for kk, v in combo.items()}
                else:
                    img = {kk: v * inv for kk, v in img.items()}
                    combo = {kk: v * inv for kk, v in combo.items()}
                pivots[k] = (img, combo)
                img = None
                break
            pimg, pcombo = piv
            for kk, v in pimg.items():
                old = img.get(kk)
                if old is None:
                    nv = (-c * v) % p if p else -c * v
                    img[kk] = nv
                    heapq.heappush(heap, -kk)
                else:
                    nv = (old - c * v) % p if p else old - c * v
                    if nv:
                        img[kk] = nv
                    else:
                        del img[kk]
            for kk, v in pcombo.items():
                old = combo.get(kk, 0)
                nv = (old - c * v) % p if p else old - c * v
                if nv:
                    combo[kk] = nv
                else:
                    combo.pop(kk, None)
        if img is not None:
            poly: dict = {}
            for jj, cc in combo.items():
                for m, v in basis[jj].items():
                    nv = poly.get(m, 0) + cc * v
                    if p:
                        nv %= p
                    if nv:
                        poly[m] = nv
                    else:
                        poly.pop(m, None)
            kernel.append(poly)
    return kernel


def _reduced_from_gb(elements: list, pk, p: int, lo) -> list:
    """Reduced basis from a (not necessarily reduced) Groebner basis."""
    elems = []
    seen = set()
    for t in elements:
        if not t:
            continue
        lm = max(t)
        if lm in seen:
            continue
        seen.add(lm)
        c = t[lm]
        if c != 1:
            inv = pow(c, -1, p) if p else 1 / c
            t = {m: (v * inv % p if p else v * inv) for m, v in t.items()}
        elems.append(_Element(lm, t, 0, False, None))
    lms = [e.lm for e in elems]
    minimal = []
    for e in elems:
        if not any(o != e.lm and pk.divides(o, e.lm) for o in lms):
            minimal.append(e)
    return _interreduce(minimal, pk, p, lo)


# ---------------------------------------------------------------------------


class Ideal:
    """An ideal of ``ring`` (a polynomial ring or a quotient of one)."""

    def __init__(self, ring: Ring, gens: Iterable = (), cap=None, *,
                 complete: bool | None = None):
        self.ring = ring
        gl = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            gl.append(g)
        self.cap = cap
        self._lock = threading.Lock()
        self._basis = None
        self._kept = None
        self._std = None
        self._powers: dict = {}
        self.hypotheses: dict = {}
        if cap is not None:
            lr = local_ring(ring)
            self.gens = tuple(Polynomial(lr, _convert_terms(g.terms, g.ring.packing, lr.packing))
                              for g in gl if g)
        else:
            base = ring.base
            self.gens = tuple(g if g.ring.packing is base.packing else
                              Polynomial(base, _convert_terms(g.terms, g.ring.packing, base.packing))
                              for g in gl if g)
        self.complete = True if cap is None else bool(complete)
        self._mono = None
        if not ring.quotient and all(g.is_monomial() for g in self.gens):
            pk = self.gens[0].ring.packing if self.gens else None
            exps = [pk.unpack(g.lm()) for g in self.gens] if pk else []
            if cap is not None:
                exps.extend(mono.monomials_of_degree(ring.nvars, cap))
            self._mono = mono.minimalize(exps)
            self.complete = True

    # -- construction helpers ------------------------------------------

    @classmethod
    def from_strings(cls, ring: Ring, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [ring(t) for t in texts])

    @classmethod
    def maximal(cls, ring: Ring) -> "Ideal":
        return cls(ring, ring.base.gens())

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.base.one()])

    @classmethod
    def m_power(cls, ring: Ring, n: int) -> "Ideal":
        """m^n, held as the empty generator set capped at ``n``."""
        if n <= 0:
            return cls.unit(ring)
        if not ring.quotient:
            return cls._from_mono(ring, tuple(mono.monomials_of_degree(ring.nvars, n)))
        return cls(ring, [], cap=n, complete=False)

    @classmethod
    def _from_mono(cls, ring: Ring, exps) -> "Ideal":
        base = ring.base
        return cls(ring, [base.monomial(e) for e in exps])

    @property
    def is_monomial(self) -> bool:
        return self._mono is not None

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def is_capped(self) -> bool:
        return self.cap is not None and self._mono is None

    def generators(self) -> list:
        """Generators as polynomials of the ring's own order."""
        base = self.ring.base
        if self._mono is not None:
            return [base.monomial(e) for e in self._mono]
        return [base.convert(g) for g in self.gens]

    def __repr__(self):
        gs = ", ".join(str(g) for g in self.generators()[:8])
        more = "" if len(self.generators()) <= 8 else ", ..."
        cap = "" if self.cap is None or self._mono is not None else f" + m^{self.cap}"
        return f"Ideal({gs}{more}{cap})"

    def _check_ring(self, other: "Ideal"):
        a, b = self.ring, other.ring
        if a.variables != b.variables or a.field != b.field:
            raise ValueError("ideals live in different rings")
        if (a.quotient or b.quotient) and a.quotient_key() != b.quotient_key():
            raise ValueError("ideals live in different quotient rings")

    # -- Groebner data -------------------------------------------------

    def basis(self) -> GroebnerBasis:
        """Reduced Groebner (standard) basis; the quotient ideal is included."""
        b = self._basis
        if b is not None:
            return b
        with self._lock:
            if self._basis is None:
                self._basis = self._compute_basis()
            return self._basis

    def _compute_basis(self) -> GroebnerBasis:
        ring = self.ring
        if self._mono is not None:
            base = ring.base
            elems = [{base.packing.pack(e): ring.field.one()} for e in self._mono]
            elems.sort(key=lambda t: max(t))
            return GroebnerBasis(base, elems)
        if self.cap is not None:
            lr = local_ring(ring)
            seed = _quotient_local_basis(ring, self.cap)
            gens = [g.terms for g in self.gens]
            basis, kept = buchberger(lr, gens, self.cap, seed)
            if self._kept is None:
                self._kept = kept
            return GroebnerBasis(lr, basis, self.cap)
        base = ring.base
        seed = _quotient_global_basis(ring)
        basis, _ = buchberger(base, [g.terms for g in self.gens], None, seed)
        return GroebnerBasis(base, basis)

    def _set_basis(self, gb: GroebnerBasis):
        with self._lock:
            if self._basis is None:
                self._basis = gb

    def leading_exponents(self) -> list:
        b = self.basis()
        pk = b.ring.packing
        return [pk.unpack(m) for m in b.lms]

    # -- lengths -------------------------------------------------------

    def standard_monomials(self) -> list:
        """Exponent tuples of the standard monomials (a k-basis of R/I)."""
        if self._std is None:
            n = self.nvars
            if self._mono is not None:
                self._std = mono.standard_monomials(self._mono, n)
            else:
                lead = self.leading_exponents()
                cap = self.cap
                if cap is None:
                    pp = mono.pure_power_exponents(lead, n)
                    if any(v is None for v in pp):
                        raise NotMPrimary("ideal is not zero-dimensional")
                self._std = mono.standard_monomials(lead, n, cap)
        return self._std

    def colength(self) -> int:
        """Length of R/I (local length for capped ideals)."""
        if self._std is not None:
            return len(self._std)
        n = self.nvars
        if self._mono is not None:
            try:
                return mono.colength(self._mono, n)
            except ValueError:
                raise NotMPrimary("monomial ideal has infinite colength") from None
        lead = self.leading_exponents()
        if self.cap is None:
            if not self.is_m_primary():
                raise NotMPrimary("ideal is not m-primary")
            return mono.colength(lead, n)
        return mono.colength(lead, n, self.cap)

    def tight_cap(self) -> int:
        """Least c with m^c contained in the (localized) ideal."""
        if self._mono is not None:
            std = self.standard_monomials()
            return 1 + max((sum(s) for s in std), default=-1)
        if self.cap is None:
            return self.localize().cap
        std = self.standard_monomials()
        return 1 + max((sum(s) for s in std), default=-1)

    def max_standard_degree(self) -> int:
        return self.tight_cap() - 1

    def tightened(self) -> "Ideal":
        """The same capped ideal with its least cap."""
        if not self.is_capped:
            return self
        t = self.tight_cap()
        if t >= self.cap:
            return self
        out = Ideal(self.ring, self.gens, cap=t, complete=self.complete)
        out._basis = self.basis().truncated(t)
        out.hypotheses = dict(self.hypotheses)
        return out

    # -- localization --------------------------------------------------

    def localize(self, max_cap: int | None = None) -> "Ideal":
        """Capped version of this ideal (the ideal near the origin).

        The cap is certified: if no standard monomial has degree ``c - 1``
        in ``I + m^c`` then ``m^(c-1)`` lies in ``I`` locally.
        """
        if self.cap is not None:
            return self
        if self._mono is not None:
            return self
        cached = self.__dict__.get("_localized")
        if cached is not None:
            return cached
        ring = self.ring
        base = ring.base
        maxdeg = max((g.degree() for g in self.gens), default=1)
        if max_cap is None:
            max_cap = max(64, 8 * maxdeg + 8)
        homog = all(_is_homog_terms(g.terms, base.packing) for g in self.gens) and \
            all(_is_homog_terms(q.terms, base.packing) for q in ring.quotient)
        if homog and ring.order == "grevlex":
            # the global basis already is the local one
            lead = self.leading_exponents()
            pp = mono.pure_power_exponents(lead, ring.nvars)
            if any(v is None for v in pp):
                raise NotMPrimary("homogeneous ideal is not m-primary")
            std = mono.standard_monomials(lead, ring.nvars)
            t = 1 + max((sum(s) for s in std), default=-1)
            out = Ideal(ring, self.gens, cap=max(t, 1), complete=True)
            out.hypotheses = dict(self.hypotheses)
            self.__dict__["_localized"] = out
            return out
        c = maxdeg + 2
        while True:
            trial = Ideal(ring, self.gens, cap=c, complete=False)
            std = trial.standard_monomials()
            top = max((sum(s) for s in std), default=-1)
            if top < c - 1:
                out = trial.tightened()
                out.complete = True
                out.hypotheses = dict(self.hypotheses)
                self.__dict__["_localized"] = out
                return out
            if c >= max_cap:
                raise Undetermined(f"no certified cap up to degree {max_cap}")
            c = min(2 * c, max_cap)

    def completed(self) -> "Ideal":
        """Capped ideal whose generators alone generate it near the origin."""
        if self.complete or self._mono is not None:
            return self
        cached = self.__dict__.get("_completed")
        if cached is not None:
            return cached
        ring = self.ring
        lr = local_ring(ring)
        c = self.cap
        # m^c is contained in m * I once we work modulo m^(c+1); Nakayama
        # then shows that the kept generators generate I
        extra = [lr.monomial(e) for e in mono.monomials_of_degree(ring.nvars, c)]
        own = [Polynomial(lr, t) for t in self.basis().elements]
        gens = own + extra
        seed = _quotient_local_basis(ring, c + 1)
        _, kept = buchberger(lr, [g.terms for g in gens], c + 1, seed)
        chosen = [gens[i] for i in sorted(kept)]
        out = Ideal(ring, chosen, cap=c, complete=True)
        out._basis = self.basis()
        out.hypotheses = dict(self.hypotheses)
        self.__dict__["_completed"] = out
        return out

    def minimal_generators(self) -> list:
        """A generating set that is minimal near the origin (Nakayama)."""
        if self._mono is not None:
            return self.generators()
        loc = self.localize().completed()
        ring = self.ring
        lr = local_ring(ring)
        c = loc.cap
        seed = _quotient_local_basis(ring, c + 1)
        gens = sorted(loc.gens, key=lambda g: -max(g.terms))
        _, kept = buchberger(lr, [g.terms for g in gens], c + 1, seed)
        return [ring.base.convert(gens[i]) for i in sorted(kept)]

    def _mingens_capped(self) -> list:
        """Local generators valid for building products (complete)."""
        loc = self.localize().completed()
        kept = loc.__dict__.get("_mingens")
        if kept is None:
            ring = loc.ring
            lr = local_ring(ring)
            c = loc.cap
            seed = _quotient_local_basis(ring, c + 1)
            gens = list(loc.gens)
            gens.sort(key=lambda g: -max(g.terms))
            _, k = buchberger(lr, [g.terms for g in gens], c + 1, seed)
            kept = [gens[i] for i in sorted(k)]
            loc.__dict__["_mingens"] = kept
        return kept

    # -- predicates ----------------------------------------------------

    def is_m_primary(self, degree_cap: int | None = None) -> PrimaryCertificate:
        n = self.nvars
        base = self.ring.base
        if self._mono is not None and not self.ring.quotient:
            pp = mono.pure_power_exponents(self._mono, n)
            if all(v is not None for v in pp):
                return PrimaryCertificate("positive", tuple(pp))
            return PrimaryCertificate("negative", (), reason="a coordinate axis lies in V(I)")
        if self.cap is not None:
            gb = self.basis()
            lr = gb.ring
            exps = []
            for i in range(n):
                N = None
                for k in range(1, self.cap + 1):
                    e = [0] * n
                    e[i] = k
                    if gb.contains(lr.monomial(e)):
                        N = k
                        break
                exps.append(N if N is not None else self.cap)
            return PrimaryCertificate("positive", tuple(exps), local=True)
        if degree_cap is None:
            maxdeg = max((g.degree() for g in self.gens), default=1)
            maxdeg = max([maxdeg] + [q.degree() for q in self.ring.quotient])
            degree_cap = 4 * maxdeg + 4
        gb = self.basis()
        pk = gb.ring.packing
        lead = [pk.unpack(m) for m in gb.lms]
        if gb.is_unit():
            return PrimaryCertificate("negative", (), reason="unit ideal")
        pp = mono.pure_power_exponents(lead, n)
        if any(v is None for v in pp):
            return PrimaryCertificate("negative", (), reason="not zero-dimensional")
        exps = []
        for i in range(n):
            e = [0] * n
            found = None
            # normal forms of successive powers of x_i
            cur = base.one()
            xi = base.gens()[i]
            for k in range(1, degree_cap + 1):
                cur = gb.normal_form(cur * xi)
                if not cur:
                    found = k
                    break
            exps.append(found)
        if all(v is not None for v in exps):
            return PrimaryCertificate("positive", tuple(exps))
        # decide exactly: the zero-dimensional ideal is m-primary iff its
        # length equals the length of its component at the origin
        total = mono.colength(lead, n)
        local = Ideal(self.ring, self.gens, cap=total + 1, complete=False).colength()
        if local != total:
            return PrimaryCertificate("negative", (), reason="zeros away from the origin")
        return PrimaryCertificate("undetermined", tuple(exps),
                                  reason=f"pure powers exceed degree cap {degree_cap}")

    def contains(self, f) -> bool:
        """Membership of a polynomial (modulo the defining ideal)."""
        if isinstance(f, str):
            f = self.ring(f)
        if not f:
            return True
        if self._mono is not None and f.is_monomial():
            return mono.contains(self._mono, f.ring.packing.unpack(f.lm()))
        gb = self.basis()
        g = Polynomial(gb.ring, _convert_terms(f.terms, f.ring.packing, gb.ring.packing))
        return gb.contains(g)

    __contains__ = contains

    def normal_form(self, f) -> Polynomial:
        if isinstance(f, str):
            f = self.ring(f)
        gb = self.basis()
        g = Polynomial(gb.ring, _convert_terms(f.terms, f.ring.packing, gb.ring.packing))
        r = gb.normal_form(g)
        return self.ring.base.convert(r) if r.ring is not self.ring.base else r

    def issubset(self, other: "Ideal") -> bool:
        self._check_ring(other)
        if self._mono is not None and other._mono is not None:
            return all(mono.contains(other._mono, g) for g in self._mono)
        A, B = self, other
        if A.is_capped or B.is_capped:
            A, B = A._as_local(), B._as_local()
            if B.max_standard_degree() >= A.cap:
                return False
            gb = B.basis()
            return all(gb.contains(g) for g in A.gens)
        gb = B.basis()
        return all(B.contains(g) for g in A.generators())

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self is other:
            return True
        self._check_ring(other)
        if self._mono is not None and other._mono is not None:
            return self._mono == other._mono
        if self.is_capped or other.is_capped:
            a, b = self._as_local(), other._as_local()
            if a.colength() != b.colength():
                return False
            return a.issubset(b)
        return self.basis().elements == other.basis().elements or (
            self.issubset(other) and other.issubset(self))

    __hash__ = object.__hash__

    def is_unit(self) -> bool:
        if self._mono is not None:
            return mono.is_unit(self._mono)
        return self.basis().is_unit()

    def _as_local(self) -> "Ideal":
        if self.is_capped:
            return self
        if self._mono is not None:
            if self.ring.quotient:
                pass
            t = self.tight_cap()
            out = Ideal(self.ring, self.generators(), cap=max(t, 1), complete=True)
            return out
        return self.localize()

    # -- operations ----------------------------------------------------

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial) or isinstance(other, str):
            other = Ideal(self.ring, [other])
        self._check_ring(other)
        if self._mono is not None and other._mono is not None:
            return Ideal._from_mono(self.ring, mono.mono_sum(self._mono, other._mono))
        if self.is_capped or other.is_capped:
            a, b = self._cap_view(), other._cap_view()
            cap = _min_cap(a.cap, b.cap)
            complete = (a.complete and a.cap == cap) or (b.complete and b.cap == cap)
            gens = list(a.gens) + list(b.gens)
            out = Ideal(self.ring, [_to_base(g, self.ring) for g in gens], cap=cap,
                        complete=complete)
            if a.cap == cap and a._basis is not None:
                # start from an existing basis
                lr = local_ring(self.ring)
                basis, _ = buchberger(lr, [g.terms for g in b.gens], cap,
                                      a.basis().elements + _quotient_local_basis(self.ring, cap))
                out._basis = GroebnerBasis(lr, basis, cap)
            return out
        return Ideal(self.ring, list(self.gens) + list(other.gens))

    def _cap_view(self) -> "Ideal":
        """Capped representation without certifying a tight cap."""
        if self.is_capped:
            return self
        if self._mono is not None:
            return self._as_local()
        return self.localize()

    def __mul__(self, other) -> "Ideal":
        if isinstance(other, Polynomial) or isinstance(other, str):
            other = Ideal(self.ring, [other])
        self._check_ring(other)
        if self._mono is not None and other._mono is not None:
            return Ideal._from_mono(self.ring, mono.mono_product(self._mono, other._mono))
        if self.is_capped or other.is_capped:
            a = self._cap_view()
            b = other._cap_view()
            ga = a._mingens_capped()
            gb = b._mingens_capped()
            gens = _pairwise_products(ga, gb, local_ring(self.ring))
            cap = a.cap + b.cap
            out = Ideal(self.ring, [_to_base(g, self.ring) for g in gens], cap=cap, complete=True)
            return out
        gens = [f * g for f in self.gens for g in other.gens]
        return Ideal(self.ring, gens)

    def __pow__(self, n: int) -> "Ideal":
        if n < 0:
            raise ValueError("negative exponent")
        if n == 0:
            return Ideal.unit(self.ring)
        if n == 1:
            return self
        got = self._powers.get(n)
        if got is not None:
            return got
        if self._mono is not None:
            prev = self ** (n - 1)
            out = Ideal._from_mono(self.ring, mono.mono_product(prev._mono, self._mono))
        elif self.is_capped or self.ring.quotient or not self._homogeneous():
            base = self._cap_view()
            if base is not self:
                out = base ** n
                self._powers[n] = out
                return out
            prev = self ** (n - 1)
            ga = prev._mingens_capped()
            gb = self._mingens_capped()
            gens = _pairwise_products(ga, gb, local_ring(self.ring))
            out = Ideal(self.ring, [_to_base(g, self.ring) for g in gens],
                        cap=prev.cap + self.cap, complete=True)
        else:
            prev = self ** (n - 1)
            gens = _global_mingens(prev)
            mine = _global_mingens(self)
            out = Ideal(self.ring, [f * g for f in gens for g in mine])
        self._powers[n] = out
        return out

    def _homogeneous(self) -> bool:
        pk = self.ring.base.packing
        return all(_is_homog_terms(g.terms, pk) for g in self.gens)

    def colon(self, other) -> "Ideal":
        """(self : other)."""
        if isinstance(other, (Polynomial, str)):
            other = Ideal(self.ring, [other])
        self._check_ring(other)
        if other._mono is not None and mono.is_unit(other._mono):
            return self
        if not other.gens and other.cap is None and other._mono is None:
            raise ValueError("colon by the zero ideal")
        if self._mono is not None and other._mono is not None:
            if not other._mono:
                raise ValueError("colon by the zero ideal")
            pp = mono.pure_power_exponents(self._mono, self.nvars)
            if all(v is not None for v in pp):
                return Ideal._from_mono(
                    self.ring, mono.mono_colon_primary(self._mono, other._mono, self.nvars))
            return Ideal._from_mono(self.ring, mono.mono_colon(self._mono, other._mono))
        if not (self.is_capped or other.is_capped) and self.is_graded() and other.is_graded():
            if self._zero_dimensional():
                return self._colon_local([_to_base(g, self.ring) for g in other.generators()])
        if self.is_capped or other.is_capped or not self.is_graded():
            A = self._cap_view()
            B = other._cap_view().completed() if other.is_capped else other
            polys = [_to_local(g, self.ring) for g in (B._mingens_capped() if B.is_capped
                                                       else B.generators())]
            return A._colon_local(polys)
        out = None
        for g in other.generators():
            c = self._colon_global(g)
            out = c if out is None else out.intersect(c)
        return out

    def is_graded(self) -> bool:
        """Homogeneous generators in a ring with a homogeneous defining ideal."""
        g = self.__dict__.get("_graded")
        if g is None:
            pk = self.ring.base.packing
            g = self.cap is None and self._homogeneous() and \
                all(_is_homog_terms(q.terms, pk) for q in self.ring.quotient)
            self.__dict__["_graded"] = g
        return g

    def _zero_dimensional(self) -> bool:
        if self._mono is not None:
            return all(v is not None for v in mono.pure_power_exponents(self._mono, self.nvars))
        lead = self.leading_exponents()
        return all(v is not None for v in mono.pure_power_exponents(lead, self.nvars))

    def near_origin(self) -> "Ideal":
        """A representation whose lengths are the lengths at the origin."""
        if self.is_capped or self._mono is not None or self.is_graded():
            return self
        return self.localize()

    def _colon_local(self, polys: list) -> "Ideal":
        gb = self.basis()
        lr = gb.ring
        pk = lr.packing
        p = lr.field.p
        cap = self.cap
        lo = None if cap is None else pk.keep_bound(cap)
        std = sorted(pk.pack(s) for s in self.standard_monomials())
        nf_cache: dict = {}
        red = gb._reducers() if gb.elements else None

        def nf_mon(m):
            r = nf_cache.get(m)
            if r is None:
                if lo is not None and m < lo:
                    r = {}
                elif red is None:
                    r = {m: 1 if p else lr.field.one()}
                else:
                    r = _reduce({m: 1 if p else lr.field.one()}, red, p, lo)
                nf_cache[m] = r
            return r

        k = len(polys)
        terms = [list(g.terms.items()) for g in polys]

        def image(j):
            s = std[j]
            out: dict = {}
            for i, tl in enumerate(terms):
                for m, c in tl:
                    mm = m + s
                    if lo is not None and mm < lo:
                        continue
                    for mr, cr in nf_mon(mm).items():
                        key = mr * k + i
                        v = out.get(key, 0) + c * cr
                        if p:
                            v %= p
                        if v:
                            out[key] = v
                        else:
                            out.pop(key, None)
            return out

        basis = [{s: 1 if p else lr.field.one()} for s in std]
        kern = _kernel(basis, image, p)
        elems = list(gb.elements) + kern
        red_basis = _reduced_from_gb(elems, pk, p, lo)
        out = Ideal(self.ring, [Polynomial(lr, t) for t in red_basis], cap=cap,
                    complete=cap is None)
        out._basis = GroebnerBasis(lr, red_basis, cap)
        return out

    def _colon_global(self, g: Polynomial) -> "Ideal":
        if self.ring.quotient:
            K = list(self.ring.quotient)
        else:
            K = []
        principal = Ideal(self.ring, [g])
        inter = self.intersect(principal)
        quots = [divide_exact(h, g, K) for h in inter.generators()]
        return Ideal(self.ring, quots)

    def intersect(self, other: "Ideal") -> "Ideal":
        self._check_ring(other)
        if self._mono is not None and other._mono is not None:
            return Ideal._from_mono(self.ring, mono.mono_intersect(self._mono, other._mono))
        if self.is_capped or other.is_capped:
            return self._cap_view()._intersect_local(other._cap_view())
        return self._intersect_global(other)

    def _intersect_local(self, other: "Ideal") -> "Ideal":
        c = max(self.cap, other.cap)
        A, B = self, other
        gbA, gbB = A.basis(), B.basis()
        lr = gbA.ring
        pk = lr.packing
        p = lr.field.p
        lo = pk.keep_bound(c)
        one = 1 if p else lr.field.one()
        n = self.nvars
        stdB = {pk.pack(s) for s in B.standard_monomials()}
        mons = []
        for d in range(c):
            for e in mono.monomials_of_degree(n, d):
                m = pk.pack(e)
                if m not in stdB:
                    mons.append(m)
        mons.sort()
        loB = pk.keep_bound(B.cap)
        basis = []
        for m in mons:
            if m < loB:
                basis.append({m: one})
            else:
                r = gbB.reduce_terms({m: one})
                t = {mm: (-v) % p if p else -v for mm, v in r.items()}
                t[m] = one
                basis.append(t)

        def image(j):
            return gbA.reduce_terms(basis[j])

        kern = _kernel(basis, image, p)
        elems = kern + [t for t in _quotient_local_basis(self.ring, c)]
        red_basis = _reduced_from_gb(elems, pk, p, lo)
        out = Ideal(self.ring, [Polynomial(lr, t) for t in red_basis], cap=c, complete=False)
        out._basis = GroebnerBasis(lr, red_basis, c)
        return out

    def _intersect_global(self, other: "Ideal") -> "Ideal":
        ring = self.ring
        base = ring.base
        tname = "t_elim"
        while tname in base.variables:
            tname += "_"
        T = Ring((tname,) + base.variables, ring.field, "elim")
        pkT = T.packing
        pkB = base.packing

        def lift(terms, texp):
            return {pkT.pack((texp,) + pkB.unpack(m)): c for m, c in terms.items()}

        one = ring.field.one()
        t_poly = {pkT.pack((1,) + (0,) * base.nvars): one}
        K = [q.terms for q in ring.quotient]
        gens = []
        for g in list(self.generators()) + [Polynomial(base, k) for k in K]:
            gens.append(lift(g.terms, 1))
        for g in list(other.generators()) + [Polynomial(base, k) for k in K]:
            a = lift(g.terms, 0)
            b = lift(g.terms, 1)
            d = dict(a)
            for m, c in b.items():
                v = d.get(m, 0) - c
                if ring.field.p:
                    v %= ring.field.p
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
            gens.append(d)
        basis, _ = buchberger(T, gens)
        out = []
        for e in basis:
            if all(pkT.unpack(m)[0] == 0 for m in e):
                out.append(Polynomial(base, {pkB.pack(pkT.unpack(m)[1:]): c for m, c in e.items()}))
        return Ideal(ring, out)

    # -- quotient rings ------------------------------------------------

    def image_in(self, ring: Ring) -> "Ideal":
        """The extended ideal in another quotient of the same polynomial ring."""
        if self._mono is not None and not ring.quotient:
            return Ideal._from_mono(ring, self._mono)
        if self.is_capped:
            return Ideal(ring, [_to_base(g, ring) for g in self.gens], cap=self.cap,
                         complete=self.complete)
        return Ideal(ring, self.generators())

    # -- integral closure ----------------------------------------------

    def monomial_integral_closure(self) -> "Ideal":
        if self._mono is None:
            raise ValueError("integral closure is only available for monomial ideals")
        return Ideal._from_mono(self.ring, mono.integral_closure(self._mono, self.nvars))

    def is_integrally_closed_monomial(self) -> bool:
        return self.monomial_integral_closure() == self

    def power_is_integrally_closed_monomial(self, q: int) -> bool:
        """Whether I^q is integrally closed, without facets of I^q."""
        if self._mono is None:
            raise ValueError("integral closure is only available for monomial ideals")
        closure = mono.integral_closure(self._mono, self.nvars, q)
        power = mono.mono_power(self._mono, q, self.nvars)
        return all(mono.contains(power, a) for a in closure)


# ---------------------------------------------------------------------------
# helpers


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _to_base(g: Polynomial, ring: Ring) -> Polynomial:
    base = ring.base
    if g.ring.packing is base.packing:
        return g
    return Polynomial(base, _convert_terms(g.terms, g.ring.packing, base.packing))


def _to_local(g: Polynomial, ring: Ring) -> Polynomial:
    lr = local_ring(ring)
    if g.ring.packing is lr.packing:
        return g
    return Polynomial(lr, _convert_terms(g.terms, g.ring.packing, lr.packing))


def _pairwise_products(ga: list, gb: list, lr: Ring) -> list:
    out = []
    seen = set()
    for f in ga:
        for g in gb:
            h = f * g
            if f.is_monomial() and g.is_monomial():
                key = max(h.terms)
                if key in seen:
                    continue
                seen.add(key)
            out.append(h)
    return out


def _global_mingens(I: Ideal) -> list:
    """Generators of a homogeneous ideal that are minimal (graded Nakayama)."""
    kept = I.__dict__.get("_gmin")
    if kept is None:
        base = I.ring.base
        gens = list(I.gens)
        _, k = buchberger(base, [g.terms for g in gens], None, _quotient_global_basis(I.ring))
        kept = [gens[i] for i in sorted(k)]
        I.__dict__["_gmin"] = kept
    return kept


def divide_exact(f: Polynomial, g: Polynomial, K=()) -> Polynomial:
    """Quotient ``f / g`` when ``g`` divides ``f`` in the polynomial ring."""
    ring = f.ring
    pk = ring.packing
    fld = ring.field
    lg, cg = g.lm(), g.lc()
    inv = fld.inv(cg)
    rem = f
    q: dict = {}
    p = fld.p
    while rem:
        lm = rem.lm()
        if not pk.divides(lg, lm):
            raise ValueError("polynomial division is not exact")
        mon = lm - lg
        c = rem.lc() * inv
        if p:
            c %= p
        q[mon] = c
        rem = rem - g.mul_term(mon, c)
    return Polynomial(ring, q)


def length_between(A: Ideal, B: Ideal, check: bool = True) -> int:
    """Length of A/B for B contained in A, both of finite colength."""
    if check and not B.issubset(A):
        raise ValueError("length_between needs the second ideal inside the first")
    return B.colength() - A.colength()


def _monomial_dimension(gens, n: int) -> int:
    """Krull dimension of k[x]/(gens) for monomial ``gens``."""
    supports = [frozenset(i for i in range(n) if g[i]) for g in gens]
    for size in range(n, -1, -1):
        for sub in combinations(range(n), size):
            s = set(sub)
            if not any(sp <= s for sp in supports):
                return size
    return 0


def krull_dimension(ring: Ring) -> int:
    """Dimension of the ring localized at the origin.

    Polynomial rings give the number of variables.  For quotients the value
    is read from the leading terms of a local standard basis of the defining
    ideal, raising the cap until two consecutive caps agree; instance files
    may preset it with :func:`set_dimension`.
    """
    d = ring._cache.get("dim")
    if d is not None:
        return d
    n = ring.nvars
    if not ring.quotient:
        d = n
    else:
        lr = local_ring(ring)
        pk = lr.packing
        maxdeg = max(q.degree() for q in ring.quotient)
        cap = 2 * maxdeg + 2
        prev = None
        while True:
            basis = _quotient_local_basis(ring, cap)
            lead = [pk.unpack(max(e)) for e in basis]
            d = _monomial_dimension(mono.minimalize(lead), n)
            if d == prev or cap > 64:
                break
            prev = d
            cap *= 2
    ring._cache["dim"] = d
    return d


def set_dimension(ring: Ring, d: int) -> None:
    if not 0 <= d <= ring.nvars:
        raise ValueError(f"dimension {d} out of range")
    ring._cache["dim"] = d
