"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from .rational import Q, ZERO


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form with leftmost-column pivoting.

    ``ncols`` limits the columns eligible as pivots (the remaining columns,
    e.g. a right-hand side, are carried along).  Returns ``(R, pivots)``
    where ``R`` holds only the nonzero rows.
    """
    M = [[Q(x) for x in r] for r in rows]
    if not M:
        return [], []
    width = len(M[0])
    if ncols is None:
        ncols = width
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            M[r] = pr
        nz = [(t, v) for t, v in enumerate(pr) if v]
        for i in range(nrows):
            if i != r:
                row = M[i]
                f = row[c]
                if f:
                    for t, v in nz:
                        row[t] -= f * v
        pivots.append(c)
        r += 1
    R = M[:r]
    # rows beyond r may still carry nonzeros outside the pivot columns
    for row in M[r:]:
        if any(x != 0 for x in row):
            R.append(row)
    return R, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, n: int):
    """Basis of {x : rows x = 0} in R^n, one vector per free column."""
    if not rows:
        return [tuple(Q(1) if i == j else ZERO for i in range(n)) for j in range(n)]
    R, piv = rref(rows)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = Q(1)
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def independent_rows(rows) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    basis: list[list] = []
    pivots: list[int] = []
    chosen = []
    for idx, row in enumerate(rows):
        v = [Q(x) for x in row]
        for b, p in zip(basis, pivots):
            f = v[p]
            if f:
                v = [a - f * c for a, c in zip(v, b)]
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is None:
            continue
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for k, b in enumerate(basis):
            f = b[p]
            if f:
                basis[k] = [a - f * c for a, c in zip(b, v)]
        basis.append(v)
        pivots.append(p)
        chosen.append(idx)
    return chosen


def solve(A, b):
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are set to zero.
    """
    if not A:
        return None if any(x != 0 for x in b) else []
    n = len(A[0])
    aug = [list(r) + [bb] for r, bb in zip(A, b)]
    R, piv = rref(aug, ncols=n)
    x = [ZERO] * n
    for row in R[len(piv):]:
        if row[n] != 0:
            return None
    for row, p in zip(R, piv):
        x[p] = row[n]
    return x


def transpose(M):
    return [list(col) for col in zip(*M)]


def matvec(M, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in M]
