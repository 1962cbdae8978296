"""Exact Fincke-Pohst enumeration of {x in Z^N : x G x^T <= R}.

All arithmetic is rational (gmpy2.mpq); there is no pruning.  Only one vector
of each pair +-x is visited, so callers double counts.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from gmpy2 import mpq

from .lll import gso


def _int_range(c: mpq, w: mpq) -> tuple[int, int]:
    """Integers x with (x - c)^2 <= w, as an inclusive range (possibly empty)."""
    if w < 0:
        return 1, 0
    r = math.sqrt(float(w))
    cf = float(c)
    lo = math.ceil(cf - r)
    hi = math.floor(cf + r)
    while (lo - 1 - c) ** 2 <= w:
        lo -= 1
    while lo <= hi + 1 and (lo - c) ** 2 > w:
        lo += 1
    while (hi + 1 - c) ** 2 <= w:
        hi += 1
    while hi >= lo and (hi - c) ** 2 > w:
        hi -= 1
    return lo, hi


class Enumerator:
    """Depth-first enumeration on a fixed (preferably LLL-reduced) Gram matrix."""

    def __init__(self, G: Sequence[Sequence[int]]):
        self.G = [list(map(int, r)) for r in G]
        self.n = len(G)
        self.mu, self.B = gso(self.G)
        if any(b <= 0 for b in self.B):
            raise ValueError("Gram matrix is not positive definite")
        self.nodes = 0

    def half_vectors(self, bound, visit: Callable[[list[int], mpq], bool | None], bound_ref=None) -> None:
        """Call visit(x, Q) for every nonzero x with Q(x) <= bound, one per +-x pair.

        If ``bound_ref`` is a one-element list it is re-read at every node, which
        lets a shortest-vector search shrink the radius as it goes.
        """
        n, mu, B = self.n, self.mu, self.B
        x = [0] * n
        partial = [mpq(0)] * (n + 1)
        ref = bound_ref if bound_ref is not None else [mpq(bound)]

        def rec(i: int, all_zero_above: bool) -> None:
            c = mpq(0)
            for j in range(i + 1, n):
                if x[j]:
                    c -= mu[j][i] * x[j]
            w = (ref[0] - partial[i + 1]) / B[i]
            lo, hi = _int_range(c, w)
            if all_zero_above:
                lo = max(lo, 0)
            for v in range(lo, hi + 1):
                self.nodes += 1
                diff = v - c
                p = partial[i + 1] + B[i] * diff * diff
                if p > ref[0]:
                    continue
                x[i] = v
                partial[i] = p
                zero_here = all_zero_above and v == 0
                if i == 0:
                    if not zero_here:
                        visit(list(x), p)
                else:
                    rec(i - 1, zero_here)
            x[i] = 0

        if n:
            rec(n - 1, True)

    def count(self, bound: int) -> tuple[int, dict[int, int]]:
        """Number of nonzero x with Q(x) <= bound, and the histogram of Q values."""
        hist: dict[int, int] = {}

        def visit(_x, q):
            qi = int(q)
            hist[qi] = hist.get(qi, 0) + 2

        self.half_vectors(bound, visit)
        return sum(hist.values()), hist

    def shortest(self) -> tuple[list[int], int]:
        best_q = min(self.G[i][i] for i in range(self.n))
        best_x = [int(i == min(range(self.n), key=lambda j: self.G[j][j])) for i in range(self.n)]
        ref = [mpq(best_q)]
        found = [best_x, best_q]

        def visit(x, q):
            if q < ref[0]:
                ref[0] = q
                found[0], found[1] = x, int(q)

        self.half_vectors(None, visit, bound_ref=ref)
        return found[0], found[1]

    def list_vectors(self, bound: int) -> list[tuple[list[int], int]]:
        out: list[tuple[list[int], int]] = []
        self.half_vectors(bound, lambda x, q: out.append((x, int(q))))
        return out
