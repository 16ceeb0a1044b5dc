"""Exact linear algebra over Q on plain lists of Fractions.

Matrices are lists of rows.  Nothing here touches floating point; rank and
kernel decisions are exact.  Integer matrices take fraction-free paths
(Bareiss) where that is cheaper.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"decimal notation not allowed for exact rationals: {s!r}")
    return Fraction(s)


def format_rational(q) -> str:
    """Wire format: always "p/q" in lowest terms, denominator positive."""
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Q(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_symmetric(M: Sequence[Sequence]) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n)
    )


def denominator_lcm(rows: Iterable[Iterable[Fraction]]) -> int:
    return reduce(lcm, (Q(x).denominator for row in rows for x in row), 1)


def scale_to_integers(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Return (integer matrix, D) with integer matrix = D * rows."""
    D = denominator_lcm(rows)
    return [[int(Q(x) * D) for x in row] for row in rows], D


def primitive_integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row (sign kept)."""
    D = denominator_lcm([row])
    ints = [int(Q(x) * D) for x in row]
    g = reduce(gcd, ints, 0)
    return [x // g for x in ints] if g else ints


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form; zero rows dropped.  Returns (R, pivot columns)."""
    M = to_matrix(rows)
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        pr = [x * inv for x in M[r]]
        M[r] = pr
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    Mi = M[i]
                    for k in range(c, ncols):
                        if pr[k]:
                            Mi[k] -= f * pr[k]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _int_rank(M: list[list[int]]) -> int:
    # fraction-free elimination; entries stay integral
    M = [row[:] for row in M]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, nrows):
            f = M[i][c]
            Mi = M[i]
            Mr = M[r]
            for k in range(c, ncols):
                Mi[k] = (piv * Mi[k] - f * Mr[k]) // prev
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    ints, _ = scale_to_integers(rows)
    return _int_rank(ints)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis (in RREF) of {x : rows . x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return identity(ncols)
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return rref(basis)[0] if basis else []


def left_nullspace(rows: Sequence[Sequence]) -> Matrix:
    """Basis of {y : y . rows = 0}."""
    return nullspace(transpose(rows), len(rows))


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        Ak = A[k]
        for i in range(k + 1, n):
            Ai = A[i]
            aik = Ai[k]
            for j in range(k + 1, n):
                Ai[j] = (akk * Ai[j] - aik * Ak[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    ints, D = scale_to_integers(M)
    return Fraction(det_int(ints), D**n)


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [list(map(Q, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    inv = inverse(M)
    return matvec(inv, b)


def adjugate_int(N: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Fraction-free Gauss-Jordan on [N | I].  Returns adj(N), or None when
    N is singular (the caller then needs the cofactor route)."""
    n = len(N)
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(N)]
    prev = 1
    sign = 1
    for k in range(n):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return None
            A[k], A[p] = A[p], A[k]
            sign = -sign
        piv = A[k][k]
        Ak = A[k]
        for i in range(n):
            if i == k:
                continue
            Ai = A[i]
            f = Ai[k]
            for j in range(2 * n):
                Ai[j] = (piv * Ai[j] - f * Ak[j]) // prev
        prev = piv
    # now A = [d I | d N^{-1}] with d = sign * det(N); adj(N) = det(N) N^{-1}
    return [[sign * x for x in row[n:]] for row in A]


def adjugate(M: Sequence[Sequence]) -> Matrix:
    """Adjugate (transposed cofactor matrix), valid for singular M too."""
    n = len(M)
    ints, D = scale_to_integers(M)
    adj = adjugate_int(ints)
    if adj is not None:
        # adj(D M) = D^(n-1) adj(M)
        s = D ** (n - 1)
        return [[Fraction(x, s) for x in row] for row in adj]
    d = det(M)
    if d != 0:
        inv = inverse(M)
        return [[d * x for x in row] for row in inv]
    if n == 1:
        return [[Fraction(1)]]
    if rank(M) < n - 1:
        return zeros(n, n)
    out = zeros(n, n)
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            out[j][i] = (-1) ** (i + j) * det(minor)
    return out


def symmetric_diagonalize(G: Sequence[Sequence]) -> tuple[Matrix, list[Fraction]]:
    """Congruence diagonalization: returns (P, d) with P G P^T = diag(d).

    Rows of P form the new basis.  Exact over Q; zero pivots are handled by
    the usual e_i + e_j trick.
    """
    n = len(G)
    A = to_matrix(G)
    P = identity(n)

    def add_row_col(i, j, f):
        # basis change e_i <- e_i + f e_j
        for k in range(n):
            A[i][k] += f * A[j][k]
        for k in range(n):
            A[k][i] += f * A[k][j]
        P[i] = [a + f * b for a, b in zip(P[i], P[j])]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        P[i], P[j] = P[j], P[i]

    for k in range(n):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][i] != 0), None)
            if p is not None:
                swap(k, p)
            else:
                p = next((i for i in range(k + 1, n) if A[k][i] != 0), None)
                if p is None:
                    continue
                add_row_col(k, p, Fraction(1))
        piv = A[k][k]
        for i in range(k + 1, n):
            if A[i][k]:
                add_row_col(i, k, -A[i][k] / piv)
    return P, [A[i][i] for i in range(n)]


def signature(G: Sequence[Sequence]) -> tuple[int, int]:
    """(n_plus, n_minus) of a symmetric rational matrix."""
    _, d = symmetric_diagonalize(G)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)
