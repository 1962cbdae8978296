"""Row-style Hermite normal form of integer generator sets."""

from __future__ import annotations

from typing import Sequence

from ..errors import RankDeficient


def hnf(rows: Sequence[Sequence[int]], modulus: int | None = None) -> list[list[int]]:
    """Upper-triangular HNF basis of the full-rank subgroup of Z^N spanned by ``rows``.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    ``modulus`` may be any D with D*Z^N inside the group; intermediate entries
    are then kept reduced mod D.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        raise RankDeficient("no generators")
    N = len(rows[0])
    if modulus is not None:
        D = abs(int(modulus))
        rows = [[x % D for x in r] for r in rows] + [[D * (i == j) for j in range(N)] for i in range(N)]
    else:
        D = None
    work = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(N):
        active = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not active:
            raise RankDeficient(f"generators have rank < {N} (no pivot in column {col})")
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            pv = piv[col]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // pv
                r = [a - q * b for a, b in zip(r, piv)]
                if D is not None:
                    r = r[: col + 1] + [x % D for x in r[col + 1 :]]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        work = rest
    # reduce entries above the pivots
    for i in range(N):
        pv = basis[i][i]
        for j in range(i):
            q = basis[j][i] // pv
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return basis
