"""Exact arithmetic in cyclotomic fields Q(zeta_k) and the trace-form geometry.

Elements are coordinate vectors in the power basis 1, z, ..., z^(d-1), which is
an integral basis for cyclotomic fields.  The normalized inner product on K_R
is ``c * Tr(x conj(y))`` with ``c = |disc|^(-1/d)``; ``c`` is never
materialized here, only the integer trace Gram is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .exact import det_frac, det_int

__all__ = [
    "CyclotomicField",
    "FieldElement",
    "field_new",
    "elem_mul",
    "conj",
    "trace",
    "trace_pairing",
    "field_norm",
    "cyclotomic_poly",
    "euler_phi",
    "mobius",
    "factorize",
]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here are conductors and small norms."""
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # low -> high coefficients, den monic
    num = list(num)
    dq = len(num) - len(den)
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = num[i + len(den) - 1]
        quot[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> tuple[int, ...]:
    """Coefficients (low -> high) of the k-th cyclotomic polynomial."""
    if k < 1:
        raise ValueError("conductor must be >= 1")
    num = [-1] + [0] * (k - 1) + [1]
    for e in range(1, k):
        if k % e == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(e)))
    return tuple(num)


def ramanujan_sum(k: int, m: int) -> int:
    """Tr_{Q(zeta_k)/Q}(zeta_k^m)."""
    g = gcd(m, k)
    total = 0
    for e in range(1, g + 1):
        if g % e == 0:
            total += mobius(k // e) * e
    return total


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable) -> "FieldElement":
        return cls(tuple(Fraction(v) for v in values))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coeffs)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "FieldElement":
        c = Fraction(c)
        return FieldElement(tuple(a * c for a in self.coeffs))


@dataclass(frozen=True)
class CyclotomicField:
    k: int
    d: int
    minpoly: tuple[int, ...]
    trace_gram: tuple[tuple[int, ...], ...]
    abs_disc: int
    # zeta^m reduced into the power basis, m = 0 .. k-1
    power_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    trace_table: tuple[int, ...] = field(repr=False, compare=False)

    def zero(self) -> FieldElement:
        return FieldElement((Fraction(0),) * self.d)

    def one(self) -> FieldElement:
        return self.zeta_pow(0)

    def zeta_pow(self, m: int) -> FieldElement:
        return FieldElement(tuple(Fraction(c) for c in self.power_table[m % self.k]))

    def element(self, coeffs: Sequence) -> FieldElement:
        if len(coeffs) != self.d:
            raise ValueError(f"expected {self.d} coefficients, got {len(coeffs)}")
        return FieldElement.of(coeffs)

    def mul_matrix(self, a: FieldElement) -> list[list[Fraction]]:
        """Row i holds the coordinates of zeta^i * a."""
        return [list(elem_mul(self, self.zeta_pow(i), a).coeffs) for i in range(self.d)]

    def mul_matrix_int(self, coeffs: Sequence[int]) -> list[list[int]]:
        return [list(mul_int(self, self.power_table[i], coeffs)) for i in range(self.d)]


@lru_cache(maxsize=None)
def field_new(k: int) -> CyclotomicField:
    """Build Q(zeta_k) with its power-basis trace Gram and |discriminant|."""
    if k < 1:
        raise ValueError("conductor must be >= 1")
    minpoly = cyclotomic_poly(k)
    d = len(minpoly) - 1
    # powers of zeta reduced modulo the monic minimal polynomial
    table = []
    cur = [1] + [0] * (d - 1)
    for _ in range(k):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * m for c, m in zip(cur, minpoly[:-1])]
    traces = tuple(ramanujan_sum(k, m) for m in range(k))
    gram = tuple(tuple(traces[(i - j) % k] for j in range(d)) for i in range(d))
    disc = det_int(gram)
    return CyclotomicField(
        k=k,
        d=d,
        minpoly=minpoly,
        trace_gram=gram,
        abs_disc=abs(disc),
        power_table=tuple(table),
        trace_table=traces,
    )


def mul_int(K: CyclotomicField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Product of two integral elements given as integer coordinate vectors."""
    out = [0] * K.d
    k, table = K.k, K.power_table
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            c = ai * bj
            for idx, z in enumerate(table[(i + j) % k]):
                if z:
                    out[idx] += c * z
    return tuple(out)


def elem_mul(K: CyclotomicField, a: FieldElement, b: FieldElement) -> FieldElement:
    out = [Fraction(0)] * K.d
    k, table = K.k, K.power_table
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj:
                continue
            c = ai * bj
            for idx, z in enumerate(table[(i + j) % k]):
                if z:
                    out[idx] += c * z
    return FieldElement(tuple(out))


def conj(K: CyclotomicField, a: FieldElement) -> FieldElement:
    """Complex conjugation zeta -> zeta^(k-1)."""
    out = [Fraction(0)] * K.d
    for j, aj in enumerate(a.coeffs):
        if not aj:
            continue
        for idx, z in enumerate(K.power_table[(-j) % K.k]):
            if z:
                out[idx] += aj * z
    return FieldElement(tuple(out))


def trace(K: CyclotomicField, a: FieldElement) -> Fraction:
    return sum((c * K.trace_table[j] for j, c in enumerate(a.coeffs)), Fraction(0))


def trace_pairing(K: CyclotomicField, a: FieldElement, b: FieldElement) -> Fraction:
    """Tr(a * conj(b)) = a^T G b with G the integer trace Gram."""
    G = K.trace_gram
    total = Fraction(0)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        row = G[i]
        total += ai * sum((row[j] * bj for j, bj in enumerate(b.coeffs) if bj), Fraction(0))
    return total


def field_norm(K: CyclotomicField, a: FieldElement) -> Fraction:
    """Absolute norm: determinant of multiplication by a."""
    return det_frac(K.mul_matrix(a))


def norm_int(K: CyclotomicField, a: Sequence[int]) -> int:
    return det_int(K.mul_matrix_int(a))
