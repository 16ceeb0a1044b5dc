"""Numerical invariants of hyperkaehler manifolds.

The Fujiki constant c is always explicit: the top intersection of 2n classes
is c times the sum over perfect matchings of products of pairings, so that
int a^{2n} = c (2n)!/(n! 2^n) q(a)^n.  K3^[n] has c = 1 in this normalization.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import linalg
from .linalg import Q

# c_2 = 6 q^dual / 5 for K3^[2]-type; recorded, not computed
C2_IN_TERMS_OF_QDUAL = Fraction(6, 5)


@lru_cache(maxsize=None)
def _matchings(elems: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    if not elems:
        return ((),)
    first, rest = elems[0], elems[1:]
    out = []
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for m in _matchings(remaining):
            out.append(((first, partner),) + m)
    return tuple(out)


def matchings(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Perfect matchings of {1..2n}, pairs sorted, list in lex order."""
    if not 1 <= n <= 6:
        raise ValueError("n must be between 1 and 6")
    return list(_matchings(tuple(range(1, 2 * n + 1))))


def fujiki_product(G: Sequence[Sequence], c, *alphas: Sequence) -> Fraction:
    if len(alphas) % 2 or not alphas:
        raise ValueError("need an even, positive number of classes")
    r = len(G)
    for a in alphas:
        if len(a) != r:
            raise ValueError("class length does not match the Gram rank")
    entries = [(i, j, Q(g)) for i, row in enumerate(G) for j, g in enumerate(row) if g]
    support = [{i: Q(x) for i, x in enumerate(a) if x} for a in alphas]

    def pairing(a: dict, b: dict) -> Fraction:
        return sum((g * a[i] * b[j] for i, j, g in entries if i in a and j in b), Fraction(0))

    k = len(alphas)
    pair = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            pair[i][j] = pair[j][i] = pairing(support[i], support[j])
    total = Fraction(0)
    for m in matchings(len(alphas) // 2):
        term = Fraction(1)
        for i, j in m:
            term *= pair[i - 1][j - 1]
            if not term:
                break
        total += term
    return Q(c) * total


def fujiki_power(G, c, alpha, n: int) -> Fraction:
    """int a^{2n} = c (2n)!/(n! 2^n) q(a)^n."""
    q = linalg.dot(linalg.matvec(G, [Q(x) for x in alpha]), alpha)
    return Q(c) * len(matchings(n)) * q**n


def chi_k3sq(q) -> Fraction:
    """Riemann-Roch on K3^[2]-type: (q + 4)(q + 6) / 8."""
    q = Q(q)
    val = (q + 4) * (q + 6) / 8
    if q.denominator == 1 and q.numerator % 2 == 0 and val.denominator != 1:
        raise ArithmeticError(f"chi({q}) = {val} is not integral")
    return val


@dataclass(frozen=True)
class BettiTable:
    b: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        b = tuple(int(x) for x in self.b)
        if len(b) % 4 != 1 or len(b) < 5:
            raise ValueError("a table for real dimension 4n has 4n + 1 entries")
        if b[0] != 1 or any(x < 0 for x in b):
            raise ValueError("b_0 must be 1 and all Betti numbers nonnegative")
        if b != b[::-1]:
            raise ValueError("table violates Poincare duality")
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return (len(self.b) - 1) // 4


K3_TABLE = BettiTable((1, 0, 22, 0, 1), "K3")
K3_2_TABLE = BettiTable((1, 0, 23, 0, 276, 0, 23, 0, 1), "K3^[2]")


@dataclass(frozen=True)
class SalamonResult:
    holds: bool
    lhs: int
    rhs: int


def salamon_check(t: BettiTable) -> SalamonResult:
    """n b_{2n} = 2 sum_{i=1}^{2n} (-1)^i (3 i^2 - n) b_{2n-i}."""
    n, b = t.n, t.b
    lhs = n * b[2 * n]
    rhs = 2 * sum((-1) ** i * (3 * i * i - n) * b[2 * n - i] for i in range(1, 2 * n + 1))
    return SalamonResult(lhs == rhs, lhs, rhs)


def guan_scan(max_b2: int = 30) -> list[tuple[int, int, int]]:
    """Feasible (b2, b3, b4) for HK fourfolds: b4 = 46 + 10 b2 - b3 >= C(b2 + 1, 2)."""
    if max_b2 < 23:
        raise ValueError("max_b2 must be at least 23")
    out = []
    for b2 in range(3, max_b2 + 1):
        for b3 in range(0, 46 + 10 * b2 + 1, 2):
            b4 = 46 + 10 * b2 - b3
            if b4 >= comb(b2 + 1, 2):
                out.append((b2, b3, b4))
    return out


def guan_summary(max_b2: int = 30) -> str:
    feas = guan_scan(max_b2)
    top = max(b2 for b2, _, _ in feas)
    at_top = [(b3, b4) for b2, b3, b4 in feas if b2 == top]
    b3s = ",".join(str(b3) for b3, _ in at_top)
    b4s = ",".join(str(b4) for _, b4 in at_top)
    return f"max b2 = {top} (b3 = {b3s}, b4 = {b4s})"


_B2 = {"OG6": 8, "OG10": 24}


def betti_b2(name: str) -> int:
    key = name.replace(" ", "")
    if key in _B2:
        return _B2[key]
    for prefix, val in (("K3^[", 23), ("Kummer^[", 7), ("Kum^[", 7)):
        if key.startswith(prefix) and key.endswith("]"):
            n = int(key[len(prefix):-1])
            if n < 2:
                raise ValueError("n must be at least 2")
            return val
    if key in ("K3n", "K3^[n]"):
        return 23
    if key in ("Kummer", "Kummer^[n]"):
        return 7
    raise ValueError(f"unknown deformation class {name!r}")


# ---------------------------------------------------------------- Sym^2 model


def sym2_basis(r: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(r) for j in range(i, r)]


@dataclass
class Sym2Model:
    """Sym^2 H^2 with the form B(uv, wz) = c [(u,v)(w,z) + (u,w)(v,z) + (u,z)(v,w)].

    Basis monomials e_i e_j (i <= j, lex).  A vector s has coordinates s_ij
    and stands for sum_{i<=j} s_ij e_i e_j.
    """

    r: int
    G: list[list[Fraction]]
    c: Fraction
    B: list[list[Fraction]]
    q_dual: list[Fraction]

    @property
    def dim(self) -> int:
        return len(self.B)

    @property
    def B_sparse(self) -> list[dict[int, Fraction]]:
        if not hasattr(self, "_B_sparse"):
            self._B_sparse = [{j: x for j, x in enumerate(row) if x} for row in self.B]
        return self._B_sparse

    def pair(self, s: Sequence, t: Sequence) -> Fraction:
        total = Fraction(0)
        Bs = self.B_sparse
        nz_t = {j: Q(x) for j, x in enumerate(t) if x}
        for i, x in enumerate(s):
            if x:
                row = Bs[i]
                for j, y in nz_t.items():
                    b = row.get(j)
                    if b:
                        total += Q(x) * b * y
        return total

    def pair_vector(self, s: Sequence) -> dict[int, Fraction]:
        """Sparse B s."""
        out: dict[int, Fraction] = {}
        for i, x in enumerate(s):
            if x:
                for j, b in self.B_sparse[i].items():
                    out[j] = out.get(j, Fraction(0)) + Q(x) * b
        return {j: y for j, y in out.items() if y}

    def product(self, u: Sequence, v: Sequence) -> list[Fraction]:
        """Coordinates of the symmetric product u.v."""
        out = []
        for i, j in sym2_basis(self.r):
            val = Q(u[i]) * Q(v[j])
            if i != j:
                val += Q(u[j]) * Q(v[i])
            out.append(val)
        return out


def sym2_model(G: Sequence[Sequence], c=1) -> Sym2Model:
    G = linalg.to_matrix(G)
    r = len(G)
    if linalg.det(G) == 0:
        raise ValueError("Gram matrix must be nondegenerate")
    c = Q(c)
    basis = sym2_basis(r)
    # B(e_i e_j, e_k e_l) = c [g_ij g_kl + g_ik g_jl + g_il g_jk]
    B = [[c * (G[i][j] * G[k][l] + G[i][k] * G[j][l] + G[i][l] * G[j][k]) for (k, l) in basis] for (i, j) in basis]
    Ginv = linalg.inverse(G)
    q_dual = [Ginv[i][i] if i == j else 2 * Ginv[i][j] for i, j in basis]
    return Sym2Model(r, G, c, B, q_dual)


@dataclass
class H4Decomposition:
    level0: list[list[Fraction]]  # basis of C h^2 + C q_dual
    level2: list[list[Fraction]]  # h . h^perp
    level4: list[list[Fraction]]  # W(h) = q_dual^perp in Sym^2(h^perp)

    @property
    def dims(self) -> tuple[int, int, int]:
        return len(self.level0), len(self.level2), len(self.level4)


def decompose_h4(model: Sym2Model, h: Sequence) -> H4Decomposition:
    h = [Q(x) for x in h]
    G = model.G
    qh = linalg.dot(linalg.matvec(G, h), h)
    if qh == 0:
        raise ValueError("q(h) = 0: projection undefined")
    perp = linalg.nullspace([linalg.matvec(G, h)], model.r)  # basis of h^perp
    hh = model.product(h, h)
    level0 = [hh, list(model.q_dual)]
    level2 = [model.product(h, f) for f in perp]
    sym_perp = [model.product(perp[a], perp[b]) for a in range(len(perp)) for b in range(a, len(perp))]
    # W(h): elements of Sym^2(h^perp) that are B-orthogonal to q_dual
    bq = model.pair_vector(model.q_dual)
    w = [sum((x * bq[j] for j, x in enumerate(v) if x and j in bq), Fraction(0)) for v in sym_perp]
    coeffs = linalg.nullspace([w], len(sym_perp))
    level4 = _combine(coeffs, sym_perp)
    return H4Decomposition(level0, level2, level4)


def _combine(coeffs, vectors):
    # sparse linear combinations: most coefficient rows are unit vectors
    out = []
    for row in coeffs:
        v = [Fraction(0)] * len(vectors[0])
        for a, x in enumerate(row):
            if x:
                for k, y in enumerate(vectors[a]):
                    if y:
                        v[k] += x * y
        out.append(v)
    return out


def projection(model: Sym2Model, dec: H4Decomposition, s: Sequence) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Components of s along the three summands (exact, via the combined basis)."""
    basis = dec.level0 + dec.level2 + dec.level4
    coords = linalg.solve(linalg.transpose(basis), [Q(x) for x in s])
    n0, n2 = len(dec.level0), len(dec.level2)
    parts = []
    for lo, hi in ((0, n0), (n0, n0 + n2), (n0 + n2, len(basis))):
        parts.append(_combine([coords[lo:hi]], basis[lo:hi])[0] if hi > lo else [Fraction(0)] * model.dim)
    return tuple(parts)
