"""Filtrations {I_n} of ideals, evaluated lazily."""

from __future__ import annotations

import threading
from typing import Callable, Sequence

from .ideal import Ideal, krull_dimension, set_dimension
from .poly import Polynomial, Ring


class Filtration:
    """A descending multiplicative sequence of ideals with ``I_0 = R``.

    Use the constructors :meth:`adic`, :meth:`ratliff_rush`, :meth:`image`
    and :meth:`explicit`; ``F[n]`` returns ``I_n``.
    """

    def __init__(self, kind: str, ring: Ring, rule: Callable[[int], Ideal], *,
                 base: Ideal, dim: int | None = None, description: str = ""):
        self.kind = kind
        self.ring = ring
        self._rule = rule
        self.base = base
        self.dim = krull_dimension(ring) if dim is None else dim
        self.description = description or kind
        self._cache: dict = {}
        self._lock = threading.Lock()

    # constructors -----------------------------------------------------

    @classmethod
    def adic(cls, I: Ideal, dim: int | None = None) -> "Filtration":
        return cls("adic", I.ring, lambda n: I ** n, base=I, dim=dim)

    @classmethod
    def ratliff_rush(cls, I: Ideal, dim: int | None = None, window: int = 3) -> "Filtration":
        from .ratliff_rush import rr_closure

        return cls("ratliff_rush", I.ring, lambda n: rr_closure(I, n, window=window).ideal,
                   base=I, dim=dim)

    @classmethod
    def image(cls, F: "Filtration", modulo: Sequence[Polynomial]) -> "Filtration":
        """The filtration {I_n R'} in R' = R/(modulo)."""
        ring = F.ring.quotient_by(modulo)
        d = max(F.dim - len(modulo), 0)
        set_dimension(ring, d)
        base = F.base.image_in(ring)
        return cls("image", ring, lambda n: F[n].image_in(ring), base=base, dim=d)

    @classmethod
    def explicit(cls, head: Sequence[Ideal], base: Ideal | None = None,
                 dim: int | None = None) -> "Filtration":
        """``I_n = head[n-1]`` for listed n, then ``I_n = base^n``."""
        head = list(head)
        if not head:
            raise ValueError("explicit filtration needs at least I_1")
        base = head[0] if base is None else base

        def rule(n):
            return head[n - 1] if n <= len(head) else base ** n

        return cls("explicit", head[0].ring, rule, base=base, dim=dim)

    # access -----------------------------------------------------------

    def __getitem__(self, n: int) -> Ideal:
        if n <= 0:
            return Ideal.unit(self.ring)
        got = self._cache.get(n)
        if got is None:
            got = self._rule(n)
            with self._lock:
                got = self._cache.setdefault(n, got)
        return got

    def colength(self, n: int) -> int:
        if n <= 0:
            return 0
        return self[n].colength()

    def check_admissible(self, upto: int, k: int = 0) -> dict:
        """Witness I^n <= I_n <= I^(n-k) and I_(n+1) <= I_n for n <= ``upto``."""
        I = self.base
        report = {"descending": True, "contains_powers": True, "inside_shifted": True}
        for n in range(1, upto + 1):
            if not self[n + 1].issubset(self[n]):
                report["descending"] = False
            if not (I ** n).issubset(self[n]):
                report["contains_powers"] = False
            if not self[n].issubset(I ** max(n - k, 0)):
                report["inside_shifted"] = False
        report["k"] = k
        report["upto"] = upto
        return report

    def __repr__(self):
        return f"Filtration({self.description}, {self.base!r}, d={self.dim})"
