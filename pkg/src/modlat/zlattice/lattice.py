from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..errors import DimensionCap, PrecisionExhausted
from ..exact import det_int, identity, matmul, transpose
from .ball import BallQuery
from .enum import Enumerator
from .lll import lll_gram
from .scale import ONE, Scale

DEFAULT_DIM_CAP = 40
DEFAULT_DELTA = Fraction(99, 100)

Matrix = tuple[tuple[int, ...], ...]


def _freeze(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


def block_form(field, t: int) -> list[list[int]]:
    """t diagonal copies of the trace Gram of ``field``."""
    d = field.d
    T = field.trace_gram
    N = t * d
    out = [[0] * N for _ in range(N)]
    for b in range(t):
        for i in range(d):
            for j in range(d):
                out[b * d + i][b * d + j] = T[i][j]
    return out


def gram(field, t: int, basis: Sequence[Sequence[int]]) -> Matrix:
    """B * T_block * B^T for basis rows in O_K^t power-basis coordinates."""
    T = block_form(field, t)
    return _freeze(matmul(matmul(basis, T), transpose(basis)))


@dataclass(frozen=True)
class IntegralLattice:
    """Lattice with rows ``basis`` and exact integer Gram ``gram``.

    The normalized squared length of the lattice vector with coefficient
    vector x is ``scale * x gram x^T``.
    """

    basis: Matrix
    gram: Matrix
    scale: Scale = ONE

    @classmethod
    def from_gram(cls, G, scale: Scale = ONE) -> "IntegralLattice":
        G = _freeze(G)
        return cls(_freeze(identity(len(G))), G, scale)

    @classmethod
    def from_basis(cls, basis, form=None, scale: Scale = ONE) -> "IntegralLattice":
        basis = _freeze(basis)
        if form is None:
            G = matmul(basis, transpose(basis))
        else:
            G = matmul(matmul(basis, form), transpose(basis))
        return cls(basis, _freeze(G), scale)

    @property
    def N(self) -> int:
        return len(self.gram)

    def with_scale(self, scale: Scale) -> "IntegralLattice":
        return IntegralLattice(self.basis, self.gram, scale)

    def det_gram(self) -> int:
        return det_int(self.gram)

    def normalized_det(self) -> Fraction:
        """det(scale * gram) as an exact rational (1 means covolume 1)."""
        return self.scale.rational_power(self.N) * self.det_gram()

    def quadratic(self, x: Sequence[int]) -> int:
        G = self.gram
        return sum(xi * sum(G[i][j] * xj for j, xj in enumerate(x)) for i, xi in enumerate(x))

    def vector(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * row[j] for c, row in zip(coeffs, self.basis)) for j in range(len(self.basis[0])))

    @cached_property
    def _reduced(self) -> tuple[list[list[int]], Enumerator]:
        U, G = lll_gram(self.gram, DEFAULT_DELTA)
        return U, Enumerator(G)


def lll_reduce(lattice: IntegralLattice, delta=DEFAULT_DELTA) -> tuple[IntegralLattice, list[list[int]]]:
    """LLL-reduced lattice (same group) and the unimodular transform U (new = U * old)."""
    U, G = lll_gram(lattice.gram, delta)
    basis = matmul(U, lattice.basis)
    return IntegralLattice(_freeze(basis), _freeze(G), lattice.scale), U


def _check_cap(lattice: IntegralLattice, cap: int) -> None:
    if lattice.N > cap:
        raise DimensionCap(f"dimension {lattice.N} exceeds enumeration cap {cap}")


def _to_original(U, y: Sequence[int]) -> list[int]:
    # y are coefficients w.r.t. the reduced basis U*B; return coefficients w.r.t. B
    n = len(U)
    return [sum(y[i] * U[i][j] for i in range(n)) for j in range(n)]


def shortest_vector(lattice: IntegralLattice, cap: int = DEFAULT_DIM_CAP) -> tuple[list[int], int]:
    """Exact (coefficients, Qmin) of a shortest nonzero vector."""
    _check_cap(lattice, cap)
    U, en = lattice._reduced
    y, q = en.shortest()
    return _to_original(U, y), q


def count_in_ball(lattice: IntegralLattice, query: BallQuery | int | Fraction, cap: int = DEFAULT_DIM_CAP) -> int:
    """Nonzero lattice vectors with Q(x) <= threshold (closed ball, both signs)."""
    _check_cap(lattice, cap)
    if not isinstance(query, BallQuery):
        query = BallQuery.exact(query)
    th = query.threshold()
    U, en = lattice._reduced
    if th.ambiguous is None:
        return en.count(th.bound)[0] if th.bound > 0 else 0
    total, hist = en.count(th.ambiguous)
    if hist.get(th.ambiguous):
        raise PrecisionExhausted(f"threshold cannot be separated from attained value {th.ambiguous}")
    return total


def ball_histogram(lattice: IntegralLattice, bound: int, cap: int = DEFAULT_DIM_CAP) -> dict[int, int]:
    """Counts of nonzero vectors by exact Q value up to ``bound``."""
    _check_cap(lattice, cap)
    return lattice._reduced[1].count(bound)[1]


def counts_for_queries(lattice: IntegralLattice, queries: Sequence[BallQuery], cap: int = DEFAULT_DIM_CAP) -> list[int]:
    """Several closed-ball counts from a single enumeration at the largest radius."""
    _check_cap(lattice, cap)
    ths = [q.threshold() for q in queries]
    top = max(max(th.bound, th.ambiguous or 0) for th in ths)
    hist = lattice._reduced[1].count(top)[1] if top > 0 else {}
    out = []
    for th in ths:
        if th.ambiguous is not None and hist.get(th.ambiguous):
            raise PrecisionExhausted(f"threshold cannot be separated from attained value {th.ambiguous}")
        out.append(sum(c for q, c in hist.items() if q <= th.bound))
    return out


def short_vectors(lattice: IntegralLattice, bound: int, cap: int = DEFAULT_DIM_CAP) -> list[tuple[list[int], int]]:
    """All nonzero (coefficients, Q) with Q <= bound, one representative per sign pair."""
    _check_cap(lattice, cap)
    U, en = lattice._reduced
    return [(_to_original(U, y), q) for y, q in en.list_vectors(bound)]
