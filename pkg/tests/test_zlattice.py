import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat.errors import DimensionCap, RankDeficient
from modlat.exact import det_int, matmul, transpose
from modlat.zlattice import (
    BallQuery,
    IntegralLattice,
    Scale,
    count_in_ball,
    hnf,
    lll_reduce,
    shortest_vector,
    short_vectors,
)
from modlat.zlattice.lll import is_lll_reduced, lll_gram

from oracles import box_count, box_radius, box_min, box_vectors, random_gram


def test_hnf_examples():
    assert hnf([(1, 2), (0, 5), (5, 10)]) == [[1, 2], [0, 5]]
    assert hnf([(5, 10), (0, 5), (1, 2)]) == [[1, 2], [0, 5]]
    assert hnf([(3, 1), (0, 0)], modulus=7) == [[1, 5], [0, 7]]
    with pytest.raises(RankDeficient):
        hnf([(1, 2), (2, 4)])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**31))
def test_hnf_same_lattice(n, seed):
    rng = np.random.default_rng(seed)
    rows = [[int(v) for v in rng.integers(-20, 21, n)] for _ in range(n + 2)]
    if np.linalg.matrix_rank(np.array(rows, dtype=float)) < n:
        return
    H = hnf(rows)
    assert len(H) == n
    for i in range(n):
        assert H[i][i] > 0 and all(H[i][j] == 0 for j in range(i))
        assert all(0 <= H[r][i] < H[i][i] for r in range(i))
    # Same lattice: every input row solves to integers in H, and the dets agree.
    Hf = np.array(H, dtype=float)
    for r in rows:
        c = np.linalg.solve(Hf.T, np.array(r, dtype=float))
        assert np.allclose(c, np.round(c), atol=1e-6)
    shuffled = list(rows)
    rng.shuffle(shuffled)
    assert hnf(shuffled) == H


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_lll_unimodular_and_reduced(n, seed):
    G = random_gram(np.random.default_rng(seed), n, spread=9)
    U, R = lll_gram(G)
    assert abs(det_int(U)) == 1
    assert matmul(matmul(U, G), transpose(U)) == R
    assert is_lll_reduced(R)


def test_enumeration_oracle_100_lattices():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 100:
        n = int(rng.integers(1, 6))
        G = random_gram(rng, n)
        lat = IntegralLattice.from_gram(G)
        x, q = shortest_vector(lat)
        bound = int(q * rng.integers(1, 4))
        if math.prod(2 * r + 1 for r in box_radius(G, bound)) > 200_000:
            continue  # keep the brute-force side fast
        assert q == box_min(G) == lat.quadratic(x)
        assert count_in_ball(lat, bound) == box_count(G, bound)
        checked += 1


def test_short_vectors_listing():
    G = [[2, 1], [1, 2]]
    lat = IntegralLattice.from_gram(G)
    # one representative per +-x pair
    got = sorted((max(tuple(x), tuple(-v for v in x)), q) for x, q in short_vectors(lat, 6))
    want = sorted({(max(x, tuple(-v for v in x)), q) for x, q in box_vectors(G, 6)})
    assert got == want


def test_known_lattices():
    Z2 = IntegralLattice.from_gram([[1, 0], [0, 1]])
    assert count_in_ball(Z2, 1) == 4 and count_in_ball(Z2, 2) == 8
    A2 = IntegralLattice.from_gram([[2, 1], [1, 2]])
    assert shortest_vector(A2)[1] == 2 and count_in_ball(A2, 2) == 6
    skew = IntegralLattice.from_basis([(1, 0), (201, 1)])
    red, U = lll_reduce(skew)
    assert red.gram == ((1, 0), (0, 1)) or [list(r) for r in red.gram] == [[1, 0], [0, 1]]


def test_dimension_cap():
    lat = IntegralLattice.from_gram([[1 if i == j else 0 for j in range(6)] for i in range(6)])
    with pytest.raises(DimensionCap):
        shortest_vector(lat, cap=5)


def test_scale_and_normalized_det():
    s = Scale.module(4, 2, 13, 1, 2)
    assert s.rational_power(4) == Fraction(1, 16 * 13**2)
    lat = IntegralLattice.from_gram([[2, 0], [0, 2]], scale=Scale.of(Fraction(1, 2)))
    assert lat.normalized_det() == 1


def test_ball_query_certified_comparisons():
    exact = BallQuery.exact(5)
    assert exact.compare(5) <= 0 and exact.compare(6) > 0
    q = BallQuery.normalized(Fraction(7, 2), Scale.of(Fraction(1, 2)))
    assert q.threshold().bound == 7
    # threshold with a pi factor: Q <= 10/pi ~ 3.18
    pi_q = BallQuery(power=1, coeff=Fraction(10), pi_exp=1)
    assert pi_q.compare(3) < 0 and pi_q.compare(4) > 0
    assert pi_q.threshold().bound == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**31))
def test_scaling_parity_and_lll_invariance(n, c, seed):
    rng = np.random.default_rng(seed)
    G = random_gram(rng, n, spread=3)
    lat = IntegralLattice.from_gram(G)
    scaled = IntegralLattice.from_gram([[c * x for x in row] for row in G])
    q = shortest_vector(lat)[1]
    assert shortest_vector(scaled)[1] == c * q
    for T in (q, 2 * q, 3 * q + 1):
        a = count_in_ball(lat, T)
        assert a % 2 == 0 and count_in_ball(scaled, c * T) == a
    B = [[int(v) for v in rng.integers(-9, 10, n)] for _ in range(n)]
    if det_int(B) == 0:
        return
    red, U = lll_reduce(IntegralLattice.from_basis(B))
    assert hnf([list(r) for r in red.basis]) == hnf(B)
