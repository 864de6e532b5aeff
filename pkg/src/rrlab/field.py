"""Coefficient fields: the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class Field:
    """Exact coefficient field.  ``p == 0`` means the rationals."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p < 2 or not gmpy2.is_prime(self.p)):
            raise ValueError(f"prime field needs a prime modulus, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``Q``, ``QQ``, ``q``, ``Fp:<p>``, ``fp:<p>`` or ``GF(p)``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return RATIONALS
        low = t.lower()
        for prefix in ("fp:", "gf(", "f_"):
            if low.startswith(prefix):
                digits = low[len(prefix):].rstrip(")")
                return cls(int(digits))
        if low == "fp":
            return cls(DEFAULT_PRIME)
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    def __str__(self):
        return f"Fp:{self.p}" if self.p else "Q"

    # element handling -------------------------------------------------

    def __call__(self, value):
        if self.p:
            if isinstance(value, (Fraction, type(mpq()))):
                num, den = int(value.numerator), int(value.denominator)
                if den % self.p == 0:
                    raise ZeroDivisionError(
                        f"denominator {den} vanishes modulo {self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def zero(self):
        return 0 if self.p else mpq(0)

    def one(self):
        return 1 if self.p else mpq(1)

    def inv(self, a):
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def to_fraction(self, a) -> Fraction:
        """Canonical rational representative (symmetric residue for Fp)."""
        if self.p:
            a = int(a) % self.p
            if a > self.p // 2:
                a -= self.p
            return Fraction(a)
        return Fraction(int(a.numerator), int(a.denominator))

    def to_text(self, a) -> str:
        fr = self.to_fraction(a)
        return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


RATIONALS = Field(0)
