"""Combinatorics of monomial ideals given by exponent tuples.

These routines back the fast path for monomial ideals in polynomial rings and
the leading-term ideals of Groebner bases.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

Exps = tuple


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Exps]) -> tuple:
    """Minimal generators, sorted by degree then lexicographically."""
    gs = sorted(set(gens), key=lambda e: (sum(e), e))
    if not gs:
        return ()
    n = len(gs[0])
    if n == 1:
        return (gs[0],)
    if n == 2:
        # staircase: keep points whose second exponent drops strictly
        out2 = []
        best = None
        for a, b in sorted(gs):
            if best is None or b < best:
                out2.append((a, b))
                best = b
        return tuple(sorted(out2, key=lambda e: (sum(e), e)))
    out: list = []
    lower: list = []
    deg = None
    level: list = []
    for g in gs:
        dg = sum(g)
        if dg != deg:
            lower.extend(level)
            level = []
            deg = dg
        # equal-degree generators cannot divide each other
        if not any(all(x <= y for x, y in zip(h, g)) for h in lower):
            level.append(g)
            out.append(g)
    return tuple(out)


def monomials_of_degree(n: int, d: int):
    """All exponent tuples in ``n`` variables of total degree ``d``."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def contains(gens: Sequence[Exps], u: Exps) -> bool:
    return any(divides(g, u) for g in gens)


def mono_sum(a, b) -> tuple:
    return minimalize(tuple(a) + tuple(b))


def mono_product(a, b) -> tuple:
    return minimalize(tuple(x + y for x, y in zip(g, h)) for g in a for h in b)


def mono_power(a, k: int, n: int) -> tuple:
    result = (tuple([0] * n),)
    for _ in range(k):
        result = mono_product(result, a)
    return result


def mono_colon_monomial(a, u: Exps) -> tuple:
    return minimalize(tuple(max(x - y, 0) for x, y in zip(g, u)) for g in a)


def mono_intersect(a, b) -> tuple:
    return minimalize(tuple(max(x, y) for x, y in zip(g, h)) for g in a for h in b)


def mono_colon(a, b) -> tuple:
    """(a : b); ``b`` must be nonzero."""
    b = tuple(b)
    if not b:
        raise ValueError("colon by the zero ideal")
    result = None
    for u in b:
        c = mono_colon_monomial(a, u)
        result = c if result is None else mono_intersect(result, c)
    return result


def gens_from_standard(std, n: int) -> tuple:
    """Minimal generators of the m-primary monomial ideal with standard set ``std``."""
    std = set(std)
    if not std:
        return (tuple([0] * n),)
    cand = set()
    for s in std:
        for i in range(n):
            c = s[:i] + (s[i] + 1,) + s[i + 1:]
            if c not in std:
                cand.add(c)
    out = []
    for c in cand:
        if all(c[:j] + (c[j] - 1,) + c[j + 1:] in std for j in range(n) if c[j]):
            out.append(c)
    return tuple(sorted(out, key=lambda e: (sum(e), e)))


def mono_colon_primary(a, b, n: int) -> tuple:
    """(a : b) for m-primary ``a`` via its standard monomials."""
    std = standard_monomials(a, n)
    sset = set(std)
    b = list(b)
    keep = []
    for s in std:
        for g in b:
            if tuple(x + y for x, y in zip(s, g)) in sset:
                keep.append(s)
                break
    return gens_from_standard(keep, n)


def is_unit(gens) -> bool:
    return any(sum(g) == 0 for g in gens)


@lru_cache(maxsize=200000)
def _count(gens: tuple, n: int, cap):
    """Monomials in ``n`` variables (of degree < cap) outside the ideal."""
    if cap is not None and cap <= 0:
        return 0
    if is_unit(gens):
        return 0
    if n == 0:
        return 1
    if n == 1:
        best = min((g[0] for g in gens), default=None)
        if best is None:
            if cap is None:
                raise ValueError("ideal has infinite colength")
            return cap
        return best if cap is None else min(best, cap)
    lasts = sorted({g[-1] for g in gens})
    total = 0
    k = 0
    while True:
        sl = minimalize(g[:-1] for g in gens if g[-1] <= k)
        if is_unit(sl):
            return total
        # slices are constant between consecutive last exponents
        nxt = next((e for e in lasts if e > k), None)
        sub_cap = None if cap is None else cap - k
        if nxt is None:
            if cap is None:
                raise ValueError("ideal has infinite colength")
            # constant slice for every remaining k < cap
            for kk in range(k, cap):
                total += _count(sl, n - 1, cap - kk)
            return total
        stop = nxt if cap is None else min(nxt, cap)
        if cap is None:
            total += (stop - k) * _count(sl, n - 1, None)
        else:
            for kk in range(k, stop):
                total += _count(sl, n - 1, cap - kk)
            if stop == cap:
                return total
        k = stop


def colength(gens, n: int, cap=None) -> int:
    """Number of standard monomials; ``cap`` adds all monomials of degree >= cap."""
    return _count(minimalize(gens), n, cap)


def standard_monomials(gens, n: int, cap=None) -> list:
    """Monomials outside the ideal, in increasing degree."""
    gset = set(minimalize(gens))
    zero = tuple([0] * n)
    if zero in gset:
        return []
    if cap is not None and cap <= 0:
        return []
    out = [zero]
    std = {zero}
    frontier = [zero]
    deg = 0
    while frontier:
        deg += 1
        if cap is not None and deg >= cap:
            break
        cand = set()
        for s in frontier:
            for i in range(n):
                m = s[:i] + (s[i] + 1,) + s[i + 1:]
                cand.add(m)
        new = []
        for m in sorted(cand):
            if m in gset:
                continue
            ok = True
            for i in range(n):
                if m[i]:
                    d = m[:i] + (m[i] - 1,) + m[i + 1:]
                    if d not in std:
                        ok = False
                        break
            if ok:
                new.append(m)
        if not new:
            break
        if cap is None and deg > 10 ** 5:
            raise ValueError("ideal has infinite colength")
        std.update(new)
        out.extend(new)
        frontier = new
    return out


def pure_power_exponents(gens, n: int) -> list:
    """Exponent N_i with x_i^N_i in the ideal (None when absent)."""
    out = []
    for i in range(n):
        best = None
        for g in gens:
            if all(g[j] == 0 for j in range(n) if j != i):
                best = g[i] if best is None else min(best, g[i])
        out.append(best)
    return out


# ---------------------------------------------------------------------------
# Newton polyhedron and integral closure


def _solve_normal(rows: list, n: int):
    """A nonzero vector orthogonal to ``rows`` when the kernel is a line."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    w = [Fraction(0)] * n
    w[f] = Fraction(1)
    for i, c in enumerate(pivots):
        w[c] = -m[i][f]
    return w


def newton_facets(gens, n: int) -> list:
    """Inequalities ``w . a >= b`` cutting out conv(gens) + R_{>=0}^n."""
    pts = list(minimalize(gens))
    if not pts:
        return []
    facets = set()
    for k in range(1, n + 1):
        for sub in combinations(pts, k):
            p0 = sub[0]
            diffs = [tuple(a - b for a, b in zip(p, p0)) for p in sub[1:]]
            for zs in combinations(range(n), n - k):
                rows = diffs + [tuple(1 if j == z else 0 for j in range(n)) for z in zs]
                w = _solve_normal(rows, n)
                if w is None:
                    continue
                if all(v <= 0 for v in w):
                    w = [-v for v in w]
                if any(v < 0 for v in w):
                    continue
                b = sum(wi * pi for wi, pi in zip(w, p0))
                if all(sum(wi * qi for wi, qi in zip(w, q)) >= b for q in pts):
                    # normalise to a primitive integer vector
                    den = 1
                    for v in w + [b]:
                        den = den * v.denominator // _gcd(den, v.denominator)
                    wi = [int(v * den) for v in w]
                    bi = int(b * den)
                    g = 0
                    for v in wi + [bi]:
                        g = _gcd(g, abs(v))
                    g = g or 1
                    facets.add((tuple(v // g for v in wi), bi // g))
    # coordinate halfspaces a_i >= 0 are implicit
    return sorted(facets)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def in_newton_polyhedron(a: Sequence[int], facets) -> bool:
    return all(sum(w * x for w, x in zip(ws, a)) >= b for ws, b in facets)


def integral_closure(gens, n: int, power: int = 1) -> tuple:
    """Minimal generators of the integral closure of a monomial ideal.

    With ``power = q`` this is the closure of the q-th power, using
    NP(I^q) = q NP(I) so the facets come from the generators of I alone.
    """
    gens = minimalize(gens)
    if not gens:
        return gens
    if is_unit(gens):
        return gens
    facets = [(w, power * b) for w, b in newton_facets(gens, n)]
    bounds = [power * max(g[i] for g in gens) for i in range(n)]
    found = []
    for a in product(*[range(b + 1) for b in bounds]):
        if in_newton_polyhedron(a, facets):
            found.append(a)
    return minimalize(found)
