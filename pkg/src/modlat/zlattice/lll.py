"""Exact LLL reduction driven by the Gram matrix (rational Gram-Schmidt)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

HALF = mpq(1, 2)


def gso(G: Sequence[Sequence[int]]) -> tuple[list[list[mpq]], list[mpq]]:
    """Gram-Schmidt coefficients mu[i][j] (j < i) and squared norms B[i] from a Gram matrix."""
    n = len(G)
    mu = [[mpq(0)] * n for _ in range(n)]
    B = [mpq(0)] * n
    for i in range(n):
        for j in range(i):
            s = mpq(G[i][j])
            for l in range(j):
                s -= mu[j][l] * mu[i][l] * B[l]
            mu[i][j] = s / B[j]
        s = mpq(G[i][i])
        for l in range(i):
            s -= mu[i][l] * mu[i][l] * B[l]
        B[i] = s
        mu[i][i] = mpq(1)
    return mu, B


def _round(x: mpq) -> int:
    # nearest integer, ties toward +inf
    return int((x + HALF).__floor__())


def lll_gram(G: Sequence[Sequence[int]], delta=Fraction(99, 100)) -> tuple[list[list[int]], list[list[int]]]:
    """Return (U, U G U^T) with U unimodular and the new basis LLL-reduced.

    Textbook integral-Gram LLL with incremental Gram-Schmidt updates.
    """
    delta = mpq(Fraction(delta).numerator, Fraction(delta).denominator)
    if not mpq(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    n = len(G)
    G = [list(map(int, row)) for row in G]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return U, G
    mu = [[mpq(0)] * n for _ in range(n)]
    B = [mpq(0)] * n
    B[0] = mpq(G[0][0])

    def compute_row(k: int) -> None:
        for j in range(k):
            s = mpq(G[k][j])
            for l in range(j):
                s -= mu[j][l] * mu[k][l] * B[l]
            mu[k][j] = s / B[j]
        s = mpq(G[k][k])
        for l in range(k):
            s -= mu[k][l] * mu[k][l] * B[l]
        B[k] = s

    def red(k: int, l: int) -> None:
        if abs(mu[k][l]) <= HALF:
            return
        q = _round(mu[k][l])
        Uk, Ul = U[k], U[l]
        for j in range(n):
            Uk[j] -= q * Ul[j]
        Gk, Gl = G[k], G[l]
        for j in range(n):
            Gk[j] -= q * Gl[j]
        for j in range(n):
            G[j][k] -= q * G[j][l]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k: int, kmax: int) -> None:
        U[k], U[k - 1] = U[k - 1], U[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        Bn = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / Bn
        b = B[k - 1]
        B[k - 1] = Bn
        B[k] = b * B[k] / Bn
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            compute_row(k)
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return U, G


def is_lll_reduced(G: Sequence[Sequence[int]], delta=Fraction(99, 100)) -> bool:
    delta = mpq(Fraction(delta).numerator, Fraction(delta).denominator)
    mu, B = gso(G)
    n = len(G)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > HALF:
                return False
    for k in range(1, n):
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            return False
    return True
