"""Monomials, monomial orders, polynomial rings and exact polynomials.

A monomial is stored as a single Python integer.  The low bits hold the
exponent vector (16 bits per variable, the top bit of each field is a guard
bit used for divisibility tests); the high bits hold an order key made of
linear forms in the exponents, so that

* multiplying monomials is integer addition, and
* comparing monomials in the ring's order is integer comparison.

Exponents must stay below 2**15.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .field import RATIONALS, Field

EXP_BITS = 16
EXP_MAX = (1 << (EXP_BITS - 1)) - 1
KEY_BITS = 24
ORDERS = ("grevlex", "lex", "grlex", "elim", "local")

_VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class Packing:
    """Integer encoding of exponent vectors for one variable count and order."""

    def __init__(self, nvars: int, order: str):
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        if nvars < 1:
            raise ValueError("need at least one variable")
        n = nvars
        allv = set(range(n))
        if order == "grevlex":
            # (deg, x1+..+x_{n-1}, ..., x1): lexicographic comparison of these
            # prefix sums is exactly degree reverse lexicographic order
            fields = [set(range(k)) for k in range(n, 0, -1)]
            tdeg_field = 0
        elif order == "grlex":
            fields = [allv] + [{i} for i in range(n)]
            tdeg_field = 0
        elif order == "lex":
            fields = [{i} for i in range(n)] + [allv]
            tdeg_field = n
        elif order == "local":
            # lowest degree leads, grevlex breaks ties; the degree field gets a
            # negative weight so that packing stays linear
            fields = [allv] + [set(range(k)) for k in range(n - 1, 0, -1)]
            tdeg_field = 0
        else:
            # first variable eliminated, grevlex on the rest; truncation
            # degree ignores the eliminated variable
            if n < 2:
                raise ValueError("elimination order needs two variables")
            rest = list(range(1, n))
            fields = [{0}] + [set(rest[:k]) for k in range(len(rest), 0, -1)]
            tdeg_field = 1
        self.nvars = n
        self.order = order
        self.low_width = EXP_BITS * n
        nf = len(fields)
        offs = [self.low_width + KEY_BITS * (nf - 1 - k) for k in range(nf)]
        self.local = order == "local"
        self.weights = []
        for i in range(n):
            w = 1 << (EXP_BITS * i)
            for k, f in enumerate(fields):
                if i in f:
                    w += -(1 << offs[k]) if (self.local and k == 0) else (1 << offs[k])
            self.weights.append(w)
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        self.tdeg_shift = offs[tdeg_field]
        self.tdeg_mask = (1 << KEY_BITS) - 1
        # threshold comparison works when the truncation degree is the
        # most significant field
        self.tdeg_is_top = tdeg_field == 0

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        m = 0
        for e, w in zip(exps, self.weights):
            if e < 0 or e > EXP_MAX:
                raise ValueError(f"exponent {e} out of range")
            m += e * w
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> (EXP_BITS * i)) & EXP_MAX for i in range(self.nvars))

    def tdeg(self, m: int) -> int:
        if self.local:
            return -(m >> self.tdeg_shift)
        return (m >> self.tdeg_shift) & self.tdeg_mask

    def keep_bound(self, cap):
        """Smallest packed value of degree below ``cap`` (local order only)."""
        return (1 - cap) << self.tdeg_shift

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.unpack(a), self.unpack(b)))

    def cap_threshold(self, cap):
        """Packed value such that ``m >= threshold`` iff tdeg(m) >= cap.

        Only available when the truncation degree leads the order key.
        """
        if cap is None or not self.tdeg_is_top or self.local:
            return None
        return cap << self.tdeg_shift


_PACKINGS: dict = {}


def packing_for(nvars: int, order: str) -> Packing:
    key = (nvars, order)
    pk = _PACKINGS.get(key)
    if pk is None:
        pk = _PACKINGS[key] = Packing(nvars, order)
    return pk


class Ring:
    """Polynomial ring k[variables], optionally modulo a defining ideal.

    Polynomials of a quotient ring are represented by polynomials of the
    ambient polynomial ring; reduction modulo the defining ideal happens in
    the ideal layer.
    """

    def __init__(self, variables: Iterable[str], field: Field = RATIONALS,
                 order: str = "grevlex", quotient: Iterable = ()):
        variables = tuple(variables)
        for v in variables:
            if not _VAR_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        self.variables = variables
        self.field = field
        self.order = order
        self.packing = packing_for(len(variables), order)
        self._var_index = {v: i for i, v in enumerate(variables)}
        quot = []
        for q in quotient:
            if isinstance(q, str):
                q = parse_polynomial(q, self.base)
            elif isinstance(q, Polynomial):
                q = self.base.convert(q)
            if q:
                quot.append(q)
        self.quotient = tuple(quot)
        self._cache: dict = {}

    # structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def base(self) -> "Ring":
        """The ambient polynomial ring (no defining ideal)."""
        if not getattr(self, "quotient", ()):
            return self
        b = self.__dict__.get("_base")
        if b is None:
            b = self.__dict__["_base"] = Ring(self.variables, self.field, self.order)
        return b

    @property
    def is_quotient(self) -> bool:
        return bool(self.quotient)

    def poly_key(self):
        return (self.variables, self.field, self.order)

    def quotient_key(self):
        """Order-independent description of the defining ideal's generators."""
        pk = self.packing
        return frozenset(frozenset((pk.unpack(m), self.field.to_fraction(c))
                                   for m, c in q.terms.items()) for q in self.quotient)

    def key(self):
        return self.poly_key() + (frozenset(
            frozenset(q.terms.items()) for q in self.quotient),)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.poly_key())

    def __repr__(self):
        s = f"{self.field}[{','.join(self.variables)}]"
        if self.quotient:
            s += "/(" + ", ".join(str(q) for q in self.quotient) + ")"
        return f"Ring({s}, {self.order})"

    def with_order(self, order: str) -> "Ring":
        if order == self.order:
            return self
        r = Ring(self.variables, self.field, order)
        return Ring(self.variables, self.field, order,
                    [r.convert(q) for q in self.quotient])

    def with_field(self, field: Field) -> "Ring":
        r = Ring(self.variables, field, self.order)
        return Ring(self.variables, field, self.order,
                    [parse_polynomial(format_polynomial(q), r) for q in self.quotient])

    def quotient_by(self, extra: Iterable["Polynomial"]) -> "Ring":
        """R / (extra): the defining ideal is enlarged."""
        return Ring(self.variables, self.field, self.order,
                    list(self.quotient) + [self.base.convert(e) for e in extra])

    # element construction ----------------------------------------------

    def var(self, name: str) -> "Polynomial":
        i = self._var_index.get(name)
        if i is None:
            raise KeyError(f"unknown variable {name!r}")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {self.packing.pack(exps): self.field.one()})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        if not c:
            return self.zero()
        return Polynomial(self, {self.packing.pack(exps): c})

    def constant(self, c) -> "Polynomial":
        return self.monomial([0] * self.nvars, c)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Re-express ``f`` (same variables and field) in this ring's order."""
        if f.ring.poly_key() == self.poly_key():
            return Polynomial(self, f.terms)
        if f.ring.variables != self.variables or f.ring.field != self.field:
            raise ValueError("cannot convert between different variables or fields")
        src, dst = f.ring.packing, self.packing
        return Polynomial(self, {dst.pack(src.unpack(m)): c for m, c in f.terms.items()})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return self.convert(text)
        if isinstance(text, str):
            return parse_polynomial(text, self)
        return self.constant(text)


class Polynomial:
    """Immutable exact polynomial: packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def lm(self) -> int:
        """Packed leading monomial."""
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def leading_exponents(self) -> tuple:
        return self.ring.packing.unpack(self.lm())

    def monomials(self) -> list:
        pk = self.ring.packing
        return [pk.unpack(m) for m in sorted(self.terms, reverse=True)]

    def items(self):
        """(exponent tuple, coefficient) pairs in decreasing order."""
        pk = self.ring.packing
        return [(pk.unpack(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.packing.unpack(m)) for m in self.terms)

    def order_at_origin(self) -> int:
        """Lowest total degree of a term (the m-adic order)."""
        if not self.terms:
            return -1
        return min(sum(self.ring.packing.unpack(m)) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        pk = self.ring.packing
        return len({sum(pk.unpack(m)) for m in self.terms}) <= 1

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    # arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring.poly_key() != other.ring.poly_key():
            raise ValueError("ring mismatch")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "numerator"):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        c = fld(c) if not hasattr(c, "numerator") or fld.p else c
        if fld.p:
            c %= fld.p
        if not c:
            return self.ring.zero()
        p = fld.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mon: int, c) -> "Polynomial":
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m + mon: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m + mon: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)) or hasattr(other, "numerator"):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        p = self.ring.field.p
        terms: dict = {}
        get = terms.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                v = get(m)
                terms[m] = c1 * c2 if v is None else v + c1 * c2
        if p:
            terms = {m: c % p for m, c in terms.items() if c % p}
        else:
            terms = {m: c for m, c in terms.items() if c}
        return Polynomial(self.ring, terms)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.poly_key() == other.ring.poly_key() and self.terms == other.terms
        if isinstance(other, int) or hasattr(other, "numerator"):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# monomial comparison on exponent tuples


def compare_monomials(order: str, a: Sequence[int], b: Sequence[int]) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials have different lengths")
    pk = packing_for(len(a), order)
    x, y = pk.pack(a), pk.pack(b)
    return (x > y) - (x < y)


# ---------------------------------------------------------------------------
# text grammar


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse a sum of terms such as ``3/2*x^2*y - z + 7``."""
    toks = _tokenize(text)
    fld = ring.field
    pk = ring.packing
    i = 0
    terms: dict = {}
    p = fld.p

    def peek():
        return toks[i]

    if peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    first = True
    while True:
        kind, val, pos = peek()
        sign = 1
        if kind in "+-" and kind != "end":
            sign = -1 if kind == "-" else 1
            i += 1
        elif not first:
            if kind == "end":
                break
            raise ParseError(f"expected '+' or '-', found {val!r}", pos)
        first = False
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        seen_factor = False
        while expect_factor:
            kind, val, pos = peek()
            if kind == "num":
                i += 1
                num = Fraction(val)
                if peek()[0] == "/":
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "num":
                        raise ParseError("expected denominator", p2)
                    if v2 == 0:
                        raise ParseError("zero denominator", p2)
                    num /= v2
                    i += 1
                coeff *= num
            elif kind == "id":
                idx = ring._var_index.get(val)
                if idx is None:
                    raise ParseError(f"unknown variable {val!r}", pos)
                i += 1
                e = 1
                if peek()[0] == "^":
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "num" or v2 < 1:
                        raise ParseError("expected positive integer exponent", p2)
                    e = v2
                    i += 1
                exps[idx] += e
            else:
                raise ParseError(
                    "expected coefficient or variable" if kind != "end" else "unexpected end of input", pos)
            seen_factor = True
            if peek()[0] == "*":
                i += 1
            else:
                expect_factor = False
        assert seen_factor
        try:
            c = fld(coeff)
        except ZeroDivisionError as exc:
            raise ParseError(str(exc), pos) from None
        m = pk.pack(exps)
        v = terms.get(m)
        v = c if v is None else v + c
        if p:
            v %= p
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
        if peek()[0] == "end":
            break
    return Polynomial(ring, terms)


def format_monomial(exps: Sequence[int], variables: Sequence[str]) -> str:
    parts = []
    for e, v in zip(exps, variables):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form, terms in decreasing order."""
    if not f.terms:
        return "0"
    ring = f.ring
    pk = ring.packing
    out = []
    for m in sorted(f.terms, reverse=True):
        c = ring.field.to_fraction(f.terms[m])
        mon = format_monomial(pk.unpack(m), ring.variables)
        neg = c < 0
        a = -c if neg else c
        if not mon:
            body = str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{a}*{mon}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
