"""Exact row reduction over Q (small dense systems only)."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list) -> tuple:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def kernel(rows: list, ncols: int) -> list:
    """Basis of {v : rows · v = 0}, each vector with its free entry set to 1."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -M[i][f]
        basis.append(v)
    return basis


def solve(columns: list, target: list):
    """Coefficients x with Σ x_k columns[k] = target, or None if inconsistent."""
    n = len(columns)
    rows = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    M, piv = rref(rows)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = M[i][n]
    return x


def det(rows: list) -> Fraction:
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(rows: list) -> list:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    M, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in M]
