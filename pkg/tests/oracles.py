"""Brute-force reference implementations shared by the tests."""

import itertools
import math

import numpy as np


def box_radius(G, bound):
    """Coefficient box guaranteed to contain every x with x^T G x <= bound."""
    Ginv = np.linalg.inv(np.array(G, dtype=float))
    return [int(math.floor(math.sqrt(bound * Ginv[i][i]) + 1e-9)) + 1 for i in range(len(G))]


def box_vectors(G, bound):
    n = len(G)
    radii = box_radius(G, bound)
    for x in itertools.product(*[range(-r, r + 1) for r in radii]):
        if any(x):
            q = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
            if q <= bound:
                yield x, q


def box_count(G, bound):
    return sum(1 for _ in box_vectors(G, bound))


def box_min(G):
    """Exact minimum of x^T G x over nonzero integer x, found by widening boxes."""
    n = len(G)
    bound = min(G[i][i] for i in range(n))
    return min(q for _, q in box_vectors(G, bound))


def random_gram(rng, n, spread=4):
    while True:
        B = rng.integers(-spread, spread + 1, size=(n, n))
        if round(abs(np.linalg.det(B))) != 0:
            return [[int(v) for v in row] for row in (B @ B.T)]
