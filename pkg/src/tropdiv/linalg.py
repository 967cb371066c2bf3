"""Exact integer linear algebra: Smith normal form with transforms and a
fraction-free determinant. Plain Python ints, so no overflow."""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Return ``(diag, U, V)`` with ``U @ A @ V`` diagonal.

    ``U`` and ``V`` are unimodular, ``diag`` lists the ``min(m, n)`` diagonal
    entries, all nonnegative, with each nonzero entry dividing the next and
    zeros last.
    """
    S = [list(map(int, row)) for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in S:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        nonzero = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, -q)
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, -q)
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # Pivot must divide the rest of the block; if not, pull the
            # offending row in and start over.
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    diag = [S[i][i] for i in range(min(m, n))]
    return diag, U, V


def in_integer_image(snf: tuple[list[int], Matrix, Matrix], x: Sequence[int]) -> bool:
    """Is ``x = A y`` solvable over the integers, given ``snf = smith_normal_form(A)``?"""
    diag, U, _ = snf
    ux = [sum(a * b for a, b in zip(row, x)) for row in U]
    for i, val in enumerate(ux):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if val:
                return False
        elif val % d:
            return False
    return True


def bareiss_determinant(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination. Empty matrix -> 1."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if M[i][k]), None)
            if pivot is None:
                return 0
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1
