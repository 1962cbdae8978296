"""Closed-form moment predictions and the brute-force counting oracles.

Predictions: Poisson moments, omega_K, the n-th moment main term
omega^n * m_n(V / omega), gamma(N), and ball-volume thresholds.  Oracles: the
rank-1 denominator index, fixed-rank matrix counts, and minimal rank-drop norms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Sequence

import mpmath

from .errors import SearchSpaceCap, ValidationError
from .exact import rank_int
from .numberfield import CyclotomicField, FieldElement, mobius
from .parallel import map_ordered
from .residue import PrimeIdeal, rank_fq, reduce_int
from .zlattice import BallQuery, IntegralLattice, Scale, block_form, hnf, short_vectors

__all__ = [
    "MomentPrediction",
    "RankCountResult",
    "RankDropResult",
    "stirling2",
    "poisson_moment",
    "omega_roots_of_unity",
    "predicted_moment",
    "unit_ball_volume",
    "gamma_radius",
    "volume_to_threshold",
    "denominator_index_rank1",
    "entry_set",
    "count_fixed_rank",
    "rank_histogram",
    "count_rank1_colinear",
    "rankdrop_search",
    "min_rankdrop_norm",
    "DEFAULT_SEARCH_CAP",
]

DEFAULT_SEARCH_CAP = 10_000_000


# -- Poisson moments ------------------------------------------------------------


@lru_cache(maxsize=None)
def stirling2(n: int, j: int) -> int:
    if n == j:
        return 1
    if j == 0 or j > n:
        return 0
    return j * stirling2(n - 1, j) + stirling2(n - 1, j - 1)


def poisson_moment(n: int, lam):
    """n-th raw moment of Poisson(lam) via Touchard polynomials; exact for rational lam."""
    if n < 0:
        raise ValidationError("moment order must be >= 0")
    if lam < 0:
        raise ValidationError("Poisson parameter must be >= 0")
    if isinstance(lam, (int, Fraction)):
        lam = Fraction(lam)
        return sum((stirling2(n, j) * lam**j for j in range(n + 1)), Fraction(0))
    return math.fsum(stirling2(n, j) * lam**j for j in range(n + 1))


def omega_roots_of_unity(field: CyclotomicField) -> int:
    """#mu(K) for K = Q(zeta_k)."""
    return field.k if field.k % 2 == 0 else 2 * field.k


@dataclass(frozen=True)
class MomentPrediction:
    n: int
    V: Fraction | float
    omegaK: int
    value: Fraction | float


def predicted_moment(n: int, V, omegaK: int) -> MomentPrediction:
    """omega^n * m_n(V / omega): main term of the n-th moment of the ball count."""
    if V < 0:
        raise ValidationError("volume must be >= 0")
    lam = Fraction(V) / omegaK if isinstance(V, (int, Fraction)) else V / omegaK
    return MomentPrediction(n, V, omegaK, omegaK**n * poisson_moment(n, lam))


# -- balls ------------------------------------------------------------------------


def unit_ball_volume(N: int):
    return mpmath.pi ** (mpmath.mpf(N) / 2) / mpmath.gamma(mpmath.mpf(N) / 2 + 1)


def gamma_radius(N: int) -> float:
    """Radius of the N-ball of unit volume."""
    if N < 1:
        raise ValidationError("dimension must be >= 1")
    return float(mpmath.gamma(mpmath.mpf(N) / 2 + 1) ** (mpmath.mpf(1) / N) / mpmath.sqrt(mpmath.pi))


def _gamma_half_sq(N: int) -> tuple[Fraction, int]:
    """Gamma(N/2 + 1)^2 as (rational, power of pi)."""
    if N % 2 == 0:
        return Fraction(factorial(N // 2) ** 2), 0
    n = (N + 1) // 2
    return Fraction(factorial(N + 1), 4**n * factorial(n)) ** 2, 1


def volume_to_threshold(V, N: int, sigma: Scale) -> BallQuery:
    """Certified query for the closed ball of normalized volume V in dimension N.

    r^N = V / v_N and the integer form threshold is tau = r^2 / sigma, so
    tau^N = V^2 Gamma(N/2+1)^2 pi^-N sigma^-N.
    """
    V = Fraction(V)
    if V <= 0:
        raise ValidationError("volume must be > 0")
    g2, g_pi = _gamma_half_sq(N)
    L = lcm(N, sigma.rational_degree())
    mult = L // N
    coeff = (V * V * g2) ** mult / sigma.rational_power(L)
    pi_exp = (N - g_pi) * mult
    r = (mpmath.mpf(V.numerator) / V.denominator / unit_ball_volume(N)) ** (mpmath.mpf(1) / N)
    return BallQuery(L, coeff, pi_exp, float(r * r))


# -- denominator index ------------------------------------------------------------


def denominator_index_rank1(field: CyclotomicField, D: Sequence[FieldElement]) -> int:
    """[O_K : {c in O_K : c * D_j in O_K for all j}] for a rank-1 echelon row D."""
    d = field.d
    if not D or D[0] != field.one():
        raise ValidationError("D must be a row with leading entry 1")
    blocks = [field.mul_matrix(Dj) for Dj in D[1:]]
    L = 1
    for M in blocks:
        for row in M:
            for x in row:
                L = lcm(L, x.denominator)
    if L == 1:
        return 1
    # c -> (c * M_j) mod L on Z^d; the kernel has index |image|
    cols = d * len(blocks)
    rows = [[int(M[i][c] * L) % L for M in blocks for c in range(d)] for i in range(d)]
    rows += [[L * (a == b) for b in range(cols)] for a in range(cols)]
    H = hnf(rows, modulus=L)
    sub_index = 1
    for i in range(cols):
        sub_index *= H[i][i]
    return L**cols // sub_index


# -- fixed-rank matrix counts -------------------------------------------------


def entry_set(field: CyclotomicField, T) -> list[tuple[int, ...]]:
    """Integral elements with normalized trace norm <= T (zero included)."""
    T = Fraction(T)
    zero = (0,) * field.d
    if T < 0:
        return []
    # c * Tr(a conj a) <= T^2 with c = |disc|^(-1/d)  <=>  Q(a)^d <= T^(2d) |disc|
    query = BallQuery(field.d, T ** (2 * field.d) * field.abs_disc, 0)
    bound = query.require_decided()
    if bound <= 0:
        return [zero]
    lat = IntegralLattice.from_gram(field.trace_gram)
    out = [zero]
    for x, _ in short_vectors(lat, bound):
        out.append(tuple(x))
        out.append(tuple(-v for v in x))
    return sorted(out)


@dataclass(frozen=True)
class RankCountResult:
    T: Fraction | float
    m: int
    n: int
    t: int
    count: int
    expectedExponent: int
    method: str = "brute"


def _rank_over_K(field: CyclotomicField, cols: Sequence[Sequence[tuple[int, ...]]], mats) -> int:
    if field.d == 1:
        return rank_int([[e[0] for e in col] for col in cols])
    d = field.d
    big = []
    for col in cols:
        for r in range(d):
            big.append([mats[e][r][c] for e in col for c in range(d)])
    return rank_int(big) // d


def _rank_hist_chunk(args) -> list[int]:
    field, t, n, entries, first_range = args
    mats = {e: field.mul_matrix_int(e) for e in entries} if field.d > 1 else None
    columns = list(itertools.product(entries, repeat=t))
    hist = [0] * (n + 1)
    for i0 in first_range:
        first = columns[i0]
        for rest in itertools.product(columns, repeat=n - 1):
            hist[_rank_over_K(field, (first,) + rest, mats)] += 1
    return hist


def rank_histogram(field: CyclotomicField, t: int, n: int, T, cap: int = DEFAULT_SEARCH_CAP, jobs: int = 1) -> list[int]:
    """Counts of t x n matrices with entries of norm <= T, by K-rank 0..n."""
    entries = entry_set(field, T)
    total = len(entries) ** (t * n)
    if total > cap:
        raise SearchSpaceCap(f"search space {total} exceeds cap {cap}")
    ncols = len(entries) ** t
    chunks = max(1, min(ncols, 4 * jobs))
    ranges = [range(i * ncols // chunks, (i + 1) * ncols // chunks) for i in range(chunks)]
    hists = map_ordered(_rank_hist_chunk, [(field, t, n, entries, r) for r in ranges], jobs)
    return [sum(h[i] for h in hists) for i in range(n + 1)]


def count_fixed_rank(
    field: CyclotomicField, t: int, n: int, m: int, T, cap: int = DEFAULT_SEARCH_CAP, jobs: int = 1
) -> RankCountResult:
    """Exact number of t x n matrices over O_K of K-rank m with all entries of norm <= T."""
    if not 0 <= m <= n:
        raise ValidationError("need 0 <= m <= n")
    hist = rank_histogram(field, t, n, T, cap, jobs)
    return RankCountResult(T, m, n, t, hist[m], m * t * field.d, "brute")


def _primitive_upto(h: int, t: int) -> int:
    """Nonzero primitive vectors of Z^t with max-norm <= h."""
    return sum(mobius(e) * ((2 * (h // e) + 1) ** t - 1) for e in range(1, h + 1)) if h > 0 else 0


def count_rank1_colinear(t: int, n: int, T) -> RankCountResult:
    """Rank-1 count over Z by summing over primitive directions (K = Q only).

    A rank-1 matrix has all columns in Z*u for a primitive u, unique up to
    sign; with ||u||_inf = h each column is a*u with |a| <= T/h.
    """
    F = math.floor(Fraction(T))
    total = 0
    prev = 0
    for h in range(1, F + 1):
        cur = _primitive_upto(h, t)
        directions = (cur - prev) // 2
        prev = cur
        total += directions * ((2 * (F // h) + 1) ** n - 1)
    return RankCountResult(T, 1, n, t, total, t, "colinear")


# -- rank drop ----------------------------------------------------------------------


@dataclass(frozen=True)
class RankDropResult:
    norm: float
    q_value: int  # Tr-form value sum_ij Tr(x_ij conj x_ij)
    witness: tuple[tuple[tuple[int, ...], ...], ...]  # t x n matrix of O_K coordinates
    normQ: int
    m: int
    d: int

    @property
    def constant(self) -> float:
        """Empirical C in norm >= C * normQ^(1/(m d))."""
        return self.norm / self.normQ ** (1 / (self.m * self.d))


def rankdrop_search(
    field: CyclotomicField, t: int, n: int, m: int, P: PrimeIdeal, cap: int = DEFAULT_SEARCH_CAP
) -> RankDropResult:
    """Smallest-norm x in M_{t x n}(O_K) with rank m whose reduction mod P has rank < m."""
    if not 1 <= m <= min(t, n):
        raise ValidationError("need 1 <= m <= min(t, n)")
    d = field.d
    lat = IntegralLattice.from_gram(block_form(field, t * n))
    F = P.residue_field
    mats = None
    bound = 1
    while True:
        vecs = short_vectors(lat, bound)
        if 2 * len(vecs) > cap:
            raise SearchSpaceCap(f"more than {cap} candidate matrices below Q = {bound}")
        best = None
        for x, q in sorted(vecs, key=lambda v: (v[1], v[0])):
            entries = [[tuple(x[(i * n + j) * d : (i * n + j + 1) * d]) for j in range(n)] for i in range(t)]
            cols = [[entries[i][j] for i in range(t)] for j in range(n)]
            if d > 1 and mats is None:
                mats = {}
            if d > 1:
                for col in cols:
                    for e in col:
                        if e not in mats:
                            mats[e] = field.mul_matrix_int(e)
            if _rank_over_K(field, cols, mats) != m:
                continue
            reduced = [[reduce_int(P, e) for e in row] for row in entries]
            if rank_fq(F, reduced) < m:
                best = (entries, q)
                break
        if best is not None:
            entries, q = best
            c = Scale.module(field.abs_disc, d)
            norm = math.sqrt(float(c) * q)
            return RankDropResult(norm, q, tuple(tuple(r) for r in entries), P.normQ, m, d)
        bound *= 2


def min_rankdrop_norm(field: CyclotomicField, t: int, n: int, m: int, P: PrimeIdeal, cap: int = DEFAULT_SEARCH_CAP) -> float:
    return rankdrop_search(field, t, n, m, P, cap).norm
