"""Prime splitting in cyclotomic fields, reduction mod P, and subspaces of k_P^t.

A prime P above p is stored in two-generator form (p, g(zeta)) with g a monic
irreducible factor of Phi_k mod p.  Residue-field elements are tuples of
length f holding the coefficients (low -> high) of a polynomial mod g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, NonIntegralElement, NotPrime, RamifiedPrime, ValidationError
from .numberfield import CyclotomicField, FieldElement, cyclotomic_poly, factorize

__all__ = [
    "ResidueField",
    "PrimeIdeal",
    "Subspace",
    "split_prime",
    "reduce_element",
    "reduce_int",
    "grassmannian_count",
    "enumerate_subspaces",
    "random_subspace",
    "rref",
    "rank_fq",
    "is_prime",
    "multiplicative_order",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 100_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def multiplicative_order(a: int, k: int) -> int:
    if k == 1:
        return 1
    a %= k
    e, x = 1, a
    while x != 1:
        x = x * a % k
        e += 1
    return e


# -- polynomials over F_p, low -> high coefficient lists ---------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(a: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in a])


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_mod_p(out, p)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = poly_mod_p(a, p)
    b = poly_mod_p(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % p
    return _trim(q), _trim(r[: len(b) - 1])


def poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = poly_mod_p(a, p), poly_mod_p(b, p)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(g: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    g = poly_mod_p(g, p)
    n = len(g) - 1
    if n <= 0:
        return False
    x = [0, 1]
    if poly_powmod(x, p**n, g, p) != poly_divmod(x, g, p)[1]:
        return False
    for r in factorize(n):
        h = poly_powmod(x, p ** (n // r), g, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] -= 1
        if poly_gcd(g, diff, p) != [1]:
            return False
    return True


# -- residue field -------------------------------------------------------------


@dataclass(frozen=True)
class ResidueField:
    """F_q = F_p[x]/(g) with g monic irreducible of degree f."""

    p: int
    g: tuple[int, ...]

    @property
    def f(self) -> int:
        return len(self.g) - 1

    @property
    def q(self) -> int:
        return self.p**self.f

    @classmethod
    def prime(cls, p: int) -> "ResidueField":
        return cls(p, (0, 1))

    @classmethod
    def of_order(cls, q: int) -> "ResidueField":
        fac = factorize(q)
        if len(fac) != 1:
            raise ValidationError(f"{q} is not a prime power")
        (p, f), = fac.items()
        if f == 1:
            return cls.prime(p)
        for tail in itertools.product(range(p), repeat=f):
            g = tuple(tail) + (1,)
            if is_irreducible(g, p):
                return cls(p, g)
        raise AssertionError("no irreducible polynomial found")

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.f

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.f - 1)

    def from_poly(self, a: Sequence[int]) -> tuple[int, ...]:
        r = poly_divmod(a, self.g, self.p)[1]
        return tuple(r) + (0,) * (self.f - len(r))

    def from_index(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.f):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def index(self, a: Sequence[int]) -> int:
        i = 0
        for c in reversed(a):
            i = i * self.p + c
        return i

    def elements(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.q):
            yield self.from_index(i)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.f == 1:
            return (a[0] * b[0] % self.p,)
        return self.from_poly(poly_mul(a, b, self.p))

    def pow(self, a, e: int):
        if self.f == 1:
            return (pow(a[0], e, self.p),)
        return self.from_poly(poly_powmod(a, e, self.g, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in residue field")
        if self.f == 1:
            return (pow(a[0], -1, self.p),)
        return self.pow(a, self.q - 2)

    def is_zero(self, a) -> bool:
        return not any(a)


@dataclass(frozen=True)
class PrimeIdeal:
    k: int
    p: int
    f: int
    g: tuple[int, ...]  # monic, low -> high
    index: int = 0  # position among the primes above p

    @property
    def normQ(self) -> int:
        return self.p**self.f

    @cached_property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, self.g)

    def zeta_image(self) -> tuple[int, ...]:
        return self.residue_field.from_poly([0, 1])


def split_prime(K: CyclotomicField, p: int) -> list[PrimeIdeal]:
    """Primes of O_K above an unramified rational prime p, in canonical order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if K.k % p == 0 and K.k > 2:
        raise RamifiedPrime(f"{p} divides the conductor {K.k}")
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor

    phi = [c % p for c in reversed(cyclotomic_poly(K.k))]
    _, factors = gf_factor(phi, p, ZZ)
    gs = []
    for fac, mult in factors:
        if mult != 1:
            raise AssertionError("unramified prime produced a repeated factor")
        gs.append(tuple(int(c) for c in reversed(fac)))
    gs.sort(key=lambda g: (len(g), tuple(reversed(g))))
    f = multiplicative_order(p, K.k) if K.k >= 3 else 1
    for g in gs:
        if len(g) - 1 != f:
            raise AssertionError(f"factor degree {len(g) - 1} != order {f}")
    return [PrimeIdeal(K.k, p, f, g, i) for i, g in enumerate(gs)]


def reduce_int(P: PrimeIdeal, coeffs: Sequence[int]) -> tuple[int, ...]:
    F = P.residue_field
    if P.f == 1:
        # evaluate at the root -g0
        r = -P.g[0] % P.p
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % P.p
        return (acc,)
    return F.from_poly(list(coeffs))


def reduce_element(P: PrimeIdeal, a: FieldElement) -> tuple[int, ...]:
    """pi_P: O_K -> k_P."""
    if not a.is_integral():
        raise NonIntegralElement(f"{a} is not an algebraic integer")
    return reduce_int(P, a.int_coeffs())


# -- linear algebra over F_q --------------------------------------------------


def rref(F: ResidueField, rows: Sequence[Sequence[tuple[int, ...]]]) -> list[tuple[tuple[int, ...], ...]]:
    """Reduced row-echelon form; zero rows dropped."""
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not F.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                factor = A[i][c]
                A[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]]


def rank_fq(F: ResidueField, rows) -> int:
    return len(rref(F, rows))


@dataclass(frozen=True)
class Subspace:
    field: ResidueField
    t: int
    s: int
    basis: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def span(cls, F: ResidueField, rows, t: int | None = None) -> "Subspace":
        rows = [tuple(tuple(x) if isinstance(x, (tuple, list)) else (x % F.p,) + (0,) * (F.f - 1) for x in r) for r in rows]
        if t is None:
            if not rows:
                raise ValidationError("ambient dimension needed for an empty spanning set")
            t = len(rows[0])
        basis = tuple(rref(F, rows))
        return cls(F, t, len(basis), basis)

    def contains(self, vec) -> bool:
        return rank_fq(self.field, list(self.basis) + [tuple(vec)]) == self.s

    def label(self) -> str:
        F = self.field
        return ";".join(",".join(str(F.index(x)) for x in row) for row in self.basis)


def grassmannian_count(q: int, t: int, s: int) -> int:
    """Gaussian binomial [t choose s]_q."""
    if not 0 <= s <= t:
        raise ValidationError("need 0 <= s <= t")
    num = den = 1
    for i in range(s):
        num *= q ** (t - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _as_field(field_or_q) -> ResidueField:
    if isinstance(field_or_q, ResidueField):
        return field_or_q
    return ResidueField.of_order(int(field_or_q))


def enumerate_subspaces(field_or_q, t: int, s: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """Every s-dimensional subspace of F_q^t exactly once, as canonical RREF."""
    F = _as_field(field_or_q)
    if not 0 <= s <= t:
        raise ValidationError("need 0 <= s <= t")
    total = grassmannian_count(F.q, t, s)
    if total > cap:
        raise CapExceeded(f"Grassmannian has {total} points, cap is {cap}")
    zero, one = F.zero(), F.one()
    elems = list(F.elements())
    for pivots in itertools.combinations(range(t), s):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, t) if j not in pivset]
        for values in itertools.product(elems, repeat=len(free)):
            rows = [[zero] * t for _ in range(s)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = one
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(F, t, s, tuple(tuple(r) for r in rows))


def random_subspace(field_or_q, t: int, s: int, rng: np.random.Generator) -> Subspace:
    """Uniform point of the Grassmannian: random full-rank s x t matrix, then RREF."""
    F = _as_field(field_or_q)
    if not 0 <= s <= t:
        raise ValidationError("need 0 <= s <= t")
    while True:
        idx = rng.integers(0, F.q, size=(s, t))
        rows = [[F.from_index(int(v)) for v in row] for row in idx]
        basis = rref(F, rows)
        if len(basis) == s:
            return Subspace(F, t, s, tuple(basis))
