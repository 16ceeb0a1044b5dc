"""Integer matrix normal forms: row Hermite form, integer kernels, Smith invariants."""
from __future__ import annotations

from math import gcd
from typing import Sequence


def hnf_rows(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the row lattice; zero rows dropped.

    Pivots positive, entries above each pivot reduced into [0, pivot).
    """
    A = [list(map(int, r)) for r in M if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        rows = [i for i in range(r, len(A)) if A[i][c]]
        if not rows:
            continue
        # Euclid down the column until one nonzero entry remains
        while True:
            rows = [i for i in range(r, len(A)) if A[i][c]]
            p = min(rows, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    f = A[i][c] // A[r][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            f = A[i][c] // A[r][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return [row for row in A[:r] if any(row)]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis (in Hermite form) of {x in Z^n : M x = 0}.

    Column reduction of M tracked by a unimodular transform; the transform
    columns matching zero columns span the kernel, which is then saturated.
    """
    n = ncols if ncols is not None else len(M[0])
    # work on rows of M^T augmented with identity: [M^T | I]
    aug = [[int(M[i][j]) for i in range(len(M))] + [int(j == k) for k in range(n)] for j in range(n)]
    m = len(M)
    r = 0
    for c in range(m):
        while True:
            rows = [i for i in range(r, n) if aug[i][c]]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(aug[i][c]))
            aug[r], aug[p] = aug[p], aug[r]
            clean = True
            for i in range(r + 1, n):
                if aug[i][c]:
                    f = aug[i][c] // aug[r][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
                    if aug[i][c]:
                        clean = False
            if clean:
                r += 1
                break
    kernel = [row[m:] for row in aug[r:]]
    return hnf_rows(kernel)


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in M]
    if not A or not A[0]:
        return []
    nr, nc = len(A), len(A[0])
    out = []
    t = 0
    while t < min(nr, nc):
        nz = [(i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not nz:
            break
        i, j = min(nz, key=lambda ij: abs(A[ij[0]][ij[1]]))
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    f = A[i][t] // A[t][t]
                    A[i] = [a - f * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    f = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= f * row[t]
                    if A[t][j]:
                        changed = True
            if not changed:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                changed = True
            if changed:
                nz = [(i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j] and (i == t or j == t)]
                i, j = min(nz, key=lambda ij: abs(A[ij[0]][ij[1]]))
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def is_saturated(basis: Sequence[Sequence[int]]) -> bool:
    """True iff the row lattice is primitive in Z^n (Z^n / span torsion-free)."""
    return all(d == 1 for d in smith_invariants(basis))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
