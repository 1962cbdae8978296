"""Symbolic positive scalars of the form  factor * prod(base_i ** exp_i).

Lattice geometry is carried by integer Gram matrices; every irrational
normalization (|disc|^(-1/d), beta^2) lives here as exact exponent data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath

from ..numberfield import factorize


def _merge(powers) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for base, exp in powers:
        for prime, mult in factorize(int(base)).items():
            acc[prime] = acc.get(prime, Fraction(0)) + Fraction(exp) * mult
    return tuple(sorted((b, e) for b, e in acc.items() if e != 0))


@dataclass(frozen=True)
class Scale:
    factor: Fraction = Fraction(1)
    powers: tuple[tuple[int, Fraction], ...] = ()  # (prime base, rational exponent)

    @classmethod
    def of(cls, factor=1, powers=()) -> "Scale":
        return cls(Fraction(factor), _merge(powers))

    @classmethod
    def module(cls, abs_disc: int, d: int, normQ: int = 1, s: int = 1, t: int = 1) -> "Scale":
        """sigma = |disc|^(-1/d) * normQ^(-2(1 - s/t)/d)."""
        beta_sq_exp = -2 * (1 - Fraction(s, t)) / d
        return cls.of(1, [(abs_disc, Fraction(-1, d)), (normQ, beta_sq_exp)])

    def __mul__(self, other: "Scale") -> "Scale":
        return Scale.of(self.factor * other.factor, list(self.powers) + list(other.powers))

    def inverse(self) -> "Scale":
        return Scale(1 / self.factor, tuple((b, -e) for b, e in self.powers))

    def pow(self, n: int) -> "Scale":
        return Scale(self.factor**n, tuple((b, e * n) for b, e in self.powers))

    def rational_degree(self) -> int:
        """Smallest n >= 1 with self**n rational."""
        n = 1
        for _, e in self.powers:
            n = lcm(n, e.denominator)
        return n

    def rational_power(self, n: int) -> Fraction:
        """self**n as an exact rational; n must be a multiple of rational_degree()."""
        out = self.factor**n
        for b, e in self.powers:
            en = e * n
            if en.denominator != 1:
                raise ValueError(f"scale**{n} is irrational")
            out *= Fraction(b) ** int(en)
        return out

    def is_rational(self) -> bool:
        return not self.powers

    def to_mpf(self, prec: int = 53):
        with mpmath.workprec(prec + 10):
            v = mpmath.mpf(self.factor.numerator) / self.factor.denominator
            for b, e in self.powers:
                v *= mpmath.power(b, mpmath.mpf(e.numerator) / e.denominator)
            return +v

    def __float__(self) -> float:
        return float(self.to_mpf(60))

    def describe(self) -> str:
        parts = [str(self.factor)] if self.factor != 1 or not self.powers else []
        parts += [f"{b}^({e})" for b, e in self.powers]
        return "*".join(parts)


ONE = Scale()
