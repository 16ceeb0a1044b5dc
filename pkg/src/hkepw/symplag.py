"""Lagrangian subspaces of (wedge^3 V, vol(a ^ b)).

Conventions
-----------
* A Lagrangian is stored as its 10 x 20 RREF basis matrix in the lex3 basis.
* Dual identification B = A^dual: given a basis a_1..a_10 of A, the "dual
  basis" of a transverse Lagrangian B is the unique b*_1..b*_10 in B with
  (b*_j, a_i)_V = delta_ij.  A graph {a_i + sum_j T_ij b*_j} is Lagrangian
  exactly when T is symmetric; T is the matrix reported by ``tau`` and used by
  ``graph_lagrangian``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .exterior import (
    BASIS,
    DIM,
    INDEX,
    MultiVector,
    Subspace,
    annihilator_F,
    exterior_power_matrix,
    merge_sign,
    pair_coords,
    pairing_matrix,
    wedge,
    wedge_map_matrix,
)
from .linalg import Q, format_rational

Rows = list[list[Fraction]]


class TransversalityError(ValueError):
    """Two subspaces that must be complementary are not."""


class IsotropyError(ValueError):
    def __init__(self, msg: str, pair: tuple[int, int] | None = None):
        super().__init__(msg)
        self.pair = pair


@dataclass(frozen=True)
class LagrangianCheck:
    ok: bool
    rank: int
    failing_pair: tuple[int, int] | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.ok

    @property
    def reason(self) -> str:
        if self.ok:
            return "lagrangian"
        if self.rank != 10:
            return f"rank defect: rank {self.rank} != 10"
        i, j = self.failing_pair
        return f"rows {i} and {j} pair to {self.value}"


def _rows(M) -> Rows:
    if isinstance(M, LagrangianSubspace):
        return [list(r) for r in M.basis]
    if isinstance(M, Subspace):
        return [list(r) for r in M.basis]
    return [r.coords() if isinstance(r, MultiVector) else [Q(x) for x in r] for r in M]


def is_lagrangian(M) -> LagrangianCheck:
    rows = _rows(M)
    if any(len(r) != 20 for r in rows):
        return LagrangianCheck(False, linalg.rank(rows) if rows else 0)
    r = linalg.rank(rows) if rows else 0
    if r != 10 or len(rows) != 10:
        return LagrangianCheck(False, r)
    for i in range(10):
        for j in range(i + 1, 10):
            p = pair_coords(rows[i], rows[j])
            if p:
                return LagrangianCheck(False, r, (i, j), p)
    return LagrangianCheck(True, r)


@dataclass(frozen=True)
class LagrangianSubspace:
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "LagrangianSubspace":
        rows = _rows(rows)
        check = is_lagrangian(rows)
        if not check:
            raise ValueError(f"not a Lagrangian subspace: {check.reason}")
        R, _ = linalg.rref(rows)
        return cls(tuple(tuple(r) for r in R))

    @cached_property
    def int_rows(self) -> list[list[int]]:
        return linalg.scale_to_integers(self.basis)[0]

    @property
    def rows(self) -> Rows:
        return [list(r) for r in self.basis]

    def vectors(self) -> list[MultiVector]:
        return [MultiVector.from_coords(3, r) for r in self.basis]

    def subspace(self) -> Subspace:
        return Subspace(3, self.basis)

    def contains(self, x) -> bool:
        return self.subspace().contains(x)

    def transform(self, g: Sequence[Sequence]) -> "LagrangianSubspace":
        """Image under wedge^3 g for g in GL(V)."""
        W = exterior_power_matrix(g)
        return LagrangianSubspace.from_rows(linalg.matmul(self.rows, W))

    def to_json(self) -> dict:
        return {"basis": [[format_rational(x) for x in r] for r in self.basis], "basis_order": "lex3"}

    @classmethod
    def from_json(cls, obj) -> "LagrangianSubspace":
        if obj.get("basis_order", "lex3") != "lex3":
            raise ValueError("only basis_order 'lex3' is supported")
        return cls.from_rows([[Q(x) for x in r] for r in obj["basis"]])


@dataclass(frozen=True)
class SymmetricChartMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    provenance: tuple = ()

    def __post_init__(self):
        if not linalg.is_symmetric(self.entries):
            raise ValueError("chart matrix is not symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def rank(self) -> int:
        return linalg.rank([list(r) for r in self.entries])

    def corank(self) -> int:
        return self.size - self.rank()

    def det(self) -> Fraction:
        return linalg.det(self.entries)

    def transpose(self) -> "SymmetricChartMatrix":
        return SymmetricChartMatrix(tuple(zip(*self.entries)), self.provenance)


def e(i: int) -> list[Fraction]:
    v = [Fraction(0)] * DIM
    v[i] = Fraction(1)
    return v


def wedge3_rows(vectors: Sequence[Sequence]) -> Rows:
    """Lex-ordered basis of wedge^3 span(vectors) (5 vectors -> 10 rows)."""
    vs = [MultiVector.vector(v) for v in vectors]
    return [wedge(wedge(vs[a], vs[b]), vs[c]).coords() for a, b, c in combinations(range(len(vs)), 3)]


def fv_rows(v0: Sequence, complement: Sequence[Sequence]) -> Rows:
    """Basis v0 ^ u_a ^ u_b of F_{v0}, with (a, b) in lex order."""
    w0 = MultiVector.vector(v0)
    us = [MultiVector.vector(u) for u in complement]
    return [wedge(wedge(w0, us[a]), us[b]).coords() for a, b in combinations(range(len(us)), 2)]


DEFAULT_A0 = fv_rows(e(0), [e(i) for i in range(1, 6)])
DEFAULT_B0 = wedge3_rows([e(i) for i in range(1, 6)])


def transverse(X, Y) -> bool:
    X, Y = _rows(X), _rows(Y)
    return linalg.rank(X + Y) == 20


def dual_basis(A_rows: Rows, B_rows: Rows) -> Rows:
    """Basis b*_j of span(B_rows) with (b*_j, a_i) = delta_ij."""
    P = pairing_matrix(B_rows, A_rows)  # P[k][i] = (b_k, a_i)
    try:
        C = linalg.inverse(P)
    except ZeroDivisionError:
        raise TransversalityError("B is not transverse to A (pairing is degenerate)") from None
    # b*_j = sum_k C[j][k] b_k  needs  C P = I
    return linalg.matmul(C, B_rows)


def graph_matrix(L_rows: Rows, A_rows: Rows, B_rows: Rows, Bdual: Rows | None = None) -> Rows:
    """T with L = {a_i + sum_j T_ij b*_j}, for Lagrangians A, B transverse and L ∩ B = 0."""
    Bs = Bdual if Bdual is not None else dual_basis(A_rows, B_rows)
    # l = sum x_i a_i + sum y_j b*_j  =>  (l, b*_j) = -x_j,  (l, a_i) = y_i
    X = [[-pair_coords(l, b) for b in Bs] for l in L_rows]
    Y = [[pair_coords(l, a) for a in A_rows] for l in L_rows]
    try:
        Xinv = linalg.inverse(X)
    except ZeroDivisionError:
        raise TransversalityError("subspace is not a graph over A (it meets B)") from None
    return linalg.matmul(Xinv, Y)


def _check_split(A0: Rows, B0: Rows) -> None:
    if len(A0) != 10 or len(B0) != 10 or not transverse(A0, B0):
        raise TransversalityError("split (A0, B0) is not a direct sum decomposition of wedge^3 V")


def graph_lagrangian(Qm: Sequence[Sequence], split: tuple | None = None) -> LagrangianSubspace:
    Qm = linalg.to_matrix(Qm)
    if len(Qm) != 10 or any(len(r) != 10 for r in Qm):
        raise ValueError("Q must be 10 x 10")
    if not linalg.is_symmetric(Qm):
        bad = next((i, j) for i in range(10) for j in range(10) if Qm[i][j] != Qm[j][i])
        raise ValueError(f"Q is not symmetric: Q{list(bad)} != Q{list(bad[::-1])}")
    A0, B0 = (DEFAULT_A0, DEFAULT_B0) if split is None else (_rows(split[0]), _rows(split[1]))
    _check_split(A0, B0)
    Bs = dual_basis(A0, B0)
    rows = [
        [a + sum((Qm[i][j] * Bs[j][c] for j in range(10)), Fraction(0)) for c, a in enumerate(A0[i])]
        for i in range(10)
    ]
    return LagrangianSubspace.from_rows(rows)


def _check_isotropic(rows: Rows) -> None:
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            p = pair_coords(rows[i], rows[j])
            if p:
                raise IsotropyError(f"input is not isotropic: vectors {i} and {j} pair to {p}", (i, j))


def _reference_matrix(shift: int) -> Rows:
    # fixed low-height symmetric matrix, invertible; used as a neutral partner
    return [
        [Fraction(((7 * (i + 1) * (j + 1) + 3 * (i + j)) % 11) - 5 + (shift if i == j else 0)) for j in range(10)]
        for i in range(10)
    ]


def _coordinate_lagrangians():
    # one of each complementary pair (I, I^c); these cover every isotropic subspace
    pairs = [(I, tuple(sorted(set(range(DIM)) - set(I)))) for I in BASIS[3] if 0 in I]
    index = {I: n for n, I in enumerate(BASIS[3])}
    for mask in range(1 << 10):
        rows = []
        for bit, (I, J) in enumerate(pairs):
            K = J if mask >> bit & 1 else I
            r = [Fraction(0)] * 20
            r[index[K]] = Fraction(1)
            rows.append(r)
        yield rows


def _reference_lagrangians():
    for shift in range(0, 6):
        Qr = _reference_matrix(shift)
        if linalg.det(Qr) != 0:
            yield graph_lagrangian(Qr).rows
    yield from _coordinate_lagrangians()


def complete_to_lagrangian(S) -> LagrangianSubspace:
    """A Lagrangian containing the isotropic subspace S, chosen deterministically.

    S = {} gives F_{e0}.  Otherwise the result is S + (S^perp ∩ L) where L is
    the first reference Lagrangian transverse to S.  Any Lagrangian input is
    returned unchanged.
    """
    rows = _rows(S)
    rows = linalg.rref(rows)[0] if rows else []
    if any(len(r) != 20 for r in rows):
        raise ValueError("vectors must have 20 coordinates")
    _check_isotropic(rows)
    if not rows:
        return LagrangianSubspace.from_rows(DEFAULT_A0)
    if len(rows) > 10:
        raise ValueError("isotropic subspaces have dimension at most 10")
    for L in _reference_lagrangians():
        if linalg.rank(rows + L) != len(rows) + 10:
            continue
        # S^perp ∩ L: combinations of L orthogonal to every row of S
        P = pairing_matrix(rows, L)
        coeffs = linalg.nullspace(P, 10) if rows else linalg.identity(10)
        extra = linalg.matmul(coeffs, L) if coeffs else []
        return LagrangianSubspace.from_rows(rows + extra)
    raise AssertionError("no transverse reference Lagrangian found")  # unreachable


def _wedge_table():
    # for each 3-index I: (i, column of e_i ^ e_I in wedge^4, sign)
    out = []
    for I in BASIS[3]:
        entries = []
        for i in range(DIM):
            if i not in I:
                J = tuple(sorted((i,) + I))
                entries.append((i, INDEX[4][J], merge_sign((i,), I)))
        out.append(entries)
    return out


_WEDGE_TABLE = _wedge_table()


def intersection_dim(A: LagrangianSubspace, v: Sequence) -> int:
    v = [Q(x) for x in v]
    if len(v) != DIM or not any(v):
        raise ValueError("v must be a nonzero vector of V")
    vi = linalg.primitive_integer_row(v)
    # images of the basis of A under alpha -> v ^ alpha, in integers
    images = []
    for row in A.int_rows:
        img = [0] * len(BASIS[4])
        for I, a in enumerate(row):
            if a:
                for i, col, sign in _WEDGE_TABLE[I]:
                    if vi[i]:
                        img[col] += sign * a * vi[i]
        images.append(img)
    return 10 - linalg._int_rank(images)


def tau(A: LagrangianSubspace, B: LagrangianSubspace, v: Sequence) -> SymmetricChartMatrix:
    """Matrix of tau_A^B([v]) : A -> B = A^dual in A's stored basis and its dual."""
    Ar, Br = A.rows, _rows(B)
    if not transverse(Ar, Br):
        raise TransversalityError("A and B are not transverse")
    Fv = [list(r) for r in annihilator_F(v).basis]
    if not transverse(Fv, Br):
        raise TransversalityError("[v] is not in U_B: F_v meets B")
    T = graph_matrix(Fv, Ar, Br)
    return SymmetricChartMatrix(tuple(tuple(r) for r in T), (A, B, tuple(Q(x) for x in v)))


def contains_decomposable(A: LagrangianSubspace, vectors: Sequence[Sequence]) -> bool:
    if linalg.rank([[Q(x) for x in w] for w in vectors]) != 3:
        raise ValueError("W must be 3-dimensional")
    return A.contains(wedge3_rows(vectors)[0])
