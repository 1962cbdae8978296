"""Certified ball thresholds.

A query asks for integer vectors with Q(x) <= tau, where tau is given exactly by

    tau ** power == coeff * pi ** (-pi_exp),    coeff rational.

Thresholds coming from ball volumes have this shape because the integer
quadratic form only ever meets rational powers of rationals and of pi.  Since
pi is transcendental, ``z <= tau`` for an integer z is decidable by interval
evaluation whenever pi_exp != 0, and by exact rational comparison otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import mpmath
from mpmath import iv

from ..errors import PrecisionExhausted
from .scale import ONE, Scale

MAX_PRECISION = 4096
START_PRECISION = 64


@dataclass(frozen=True)
class Threshold:
    """Largest integer Q value admitted, with an optional undecided tie value."""

    bound: int
    ambiguous: int | None = None


@dataclass(frozen=True)
class BallQuery:
    power: int
    coeff: Fraction
    pi_exp: int = 0
    threshold_normalized: float | None = None  # r^2 in the normalized metric, for reports
    max_precision: int = MAX_PRECISION

    @classmethod
    def exact(cls, bound) -> "BallQuery":
        """Q(x) <= bound for a rational bound (integer-form units)."""
        b = Fraction(bound)
        return cls(1, b, 0, float(b))

    @classmethod
    def normalized(cls, r2, scale: Scale = ONE) -> "BallQuery":
        """Normalized squared radius r2 (rational); threshold r2/sigma on Q."""
        r2 = Fraction(r2)
        n = scale.rational_degree()
        return cls(n, r2**n / scale.rational_power(n), 0, float(r2))

    def approx(self, prec: int = 53):
        with mpmath.workprec(prec + 20):
            v = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            if self.pi_exp:
                v = v / mpmath.pi**self.pi_exp
            return mpmath.root(v, self.power) if self.power != 1 else v

    def compare(self, z: int) -> int | None:
        """Sign of z - tau, certified; None when undecidable at max precision."""
        if z < 0:
            return -1
        if self.pi_exp == 0:
            diff = Fraction(z) ** self.power - self.coeff
            return (diff > 0) - (diff < 0)
        num, den = self.coeff.numerator, self.coeff.denominator
        saved = iv.prec
        try:
            prec = START_PRECISION
            while prec <= self.max_precision:
                iv.prec = prec
                x = iv.mpf(z) ** self.power * iv.pi**self.pi_exp * den - num
                if x.a > 0:
                    return 1
                if x.b < 0:
                    return -1
                prec *= 2
        finally:
            iv.prec = saved
        return None

    def threshold(self) -> Threshold:
        """floor(tau), certified; an undecided integer is reported, not guessed."""
        z = max(int(floor(self.approx(80))), -1)
        while True:
            c = self.compare(z + 1)
            if c is None:
                return Threshold(z, ambiguous=z + 1)
            if c > 0:
                break
            z += 1
        while z >= 0:
            c = self.compare(z)
            if c is None:
                return Threshold(z - 1, ambiguous=z)
            if c <= 0:
                break
            z -= 1
        return Threshold(z)

    def require_decided(self, attained: set[int] | None = None) -> int:
        th = self.threshold()
        if th.ambiguous is not None and (attained is None or th.ambiguous in attained):
            raise PrecisionExhausted(f"threshold tie at Q = {th.ambiguous}")
        return th.bound
