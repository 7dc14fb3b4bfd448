"""Pure-Python elimination kernel (arbitrary precision)."""

from __future__ import annotations

from math import gcd


def diagonal_entries(rows: list[list[int]]) -> list[int]:
    """Nonzero pivots of a min-abs elimination of ``rows`` (not yet a divisibility chain).

    ``rows`` is consumed.
    """
    A = rows
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            pivot_row = A[t]
            clean = True
            for i in range(t + 1, m):
                row = A[i]
                v = row[t]
                if v:
                    q = v // p
                    if q:
                        for j in range(t, n):
                            if pivot_row[j]:
                                row[j] -= q * pivot_row[j]
                    if row[t]:
                        clean = False
            for j in range(t + 1, n):
                v = pivot_row[j]
                if v:
                    q = v // p
                    if q:
                        for i in range(t, m):
                            if A[i][t]:
                                A[i][j] -= q * A[i][t]
                    if pivot_row[j]:
                        clean = False
            if clean:
                break
            # move the smallest remainder in the pivot row/column onto the diagonal
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                v = A[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, n):
                v = pivot_row[j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(A[t][t])
        t += 1
    return diag


def divisibility_chain(diag: list[int]) -> list[int]:
    """Invariant factors of a diagonal matrix: pairwise gcd/lcm until d1 | d2 | ..."""
    d = sorted(abs(int(x)) for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d
