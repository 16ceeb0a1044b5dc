"""Exterior algebra of a fixed 6-dimensional space V = Q^6.

Basis of wedge^k V: strictly increasing index tuples in lexicographic order.
For k = 3 these are the 20 coordinates used everywhere else in the package.
The volume form is normalized by vol(e0^e1^e2^e3^e4^e5) = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .linalg import Q, format_rational

DIM = 6


def basis(k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(DIM), k))


BASIS = {k: basis(k) for k in range(DIM + 1)}
INDEX = {k: {I: n for n, I in enumerate(BASIS[k])} for k in range(DIM + 1)}
TOP = tuple(range(DIM))


def merge_sign(I: Sequence[int], J: Sequence[int]) -> int:
    """Sign of the permutation sorting I + J, or 0 if they overlap."""
    if set(I) & set(J):
        return 0
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, eq=False)
class MultiVector:
    grade: int
    coeffs: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.grade <= DIM:
            raise ValueError(f"grade must lie in 0..{DIM}, got {self.grade}")
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.grade or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing of length {self.grade}")
            if any(not 0 <= i < DIM for i in idx):
                raise ValueError(f"index {idx} out of range")
            c = Q(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis_vector(cls, *idx: int) -> "MultiVector":
        # unsorted input is allowed; the sign is absorbed
        s = sorted(idx)
        if len(set(s)) != len(s):
            return cls(len(s), {})
        sign = 1
        lst = list(idx)
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                if lst[i] > lst[j]:
                    sign = -sign
        return cls(len(s), {tuple(s): Fraction(sign)})

    @classmethod
    def vector(cls, v: Sequence) -> "MultiVector":
        if len(v) != DIM:
            raise ValueError(f"expected {DIM} coordinates")
        return cls(1, {(i,): Q(c) for i, c in enumerate(v)})

    @classmethod
    def from_coords(cls, grade: int, coords: Sequence) -> "MultiVector":
        if len(coords) != len(BASIS[grade]):
            raise ValueError(f"grade {grade} needs {len(BASIS[grade])} coordinates")
        return cls(grade, dict(zip(BASIS[grade], map(Q, coords))))

    def coords(self) -> list[Fraction]:
        return [self.coeffs.get(I, Fraction(0)) for I in BASIS[self.grade]]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.grade == other.grade and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.grade, frozenset(self.coeffs.items())))

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if self.grade != other.grade:
            raise ValueError("cannot add multivectors of different grade")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MultiVector(self.grade, out)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.grade, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + (-other)

    def __mul__(self, scalar) -> "MultiVector":
        s = Q(scalar)
        return MultiVector(self.grade, {k: s * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "MultiVector") -> "MultiVector":
        return wedge(self, other)

    def __repr__(self):
        if not self.coeffs:
            return f"MultiVector({self.grade}, 0)"
        terms = " + ".join(f"{c}*e{''.join(map(str, k))}" for k, c in sorted(self.coeffs.items()))
        return f"MultiVector({self.grade}, {terms})"

    def to_json(self) -> dict:
        return {
            "grade": self.grade,
            "terms": [{"idx": list(k), "c": format_rational(c)} for k, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MultiVector":
        grade = int(obj["grade"])
        coeffs: dict = {}
        for term in obj["terms"]:
            idx = tuple(int(i) for i in term["idx"])
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + Q(term["c"])
        return cls(grade, coeffs)


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    if a.grade + b.grade > DIM:
        raise ValueError(f"grade overflow: {a.grade} + {b.grade} > {DIM}")
    out: dict[tuple[int, ...], Fraction] = {}
    for I, x in a.coeffs.items():
        for J, y in b.coeffs.items():
            s = merge_sign(I, J)
            if s:
                K = tuple(sorted(I + J))
                out[K] = out.get(K, Fraction(0)) + s * x * y
    return MultiVector(a.grade + b.grade, out)


def wedge_all(*vs: MultiVector) -> MultiVector:
    out = MultiVector(0, {(): Fraction(1)})
    for v in vs:
        out = wedge(out, v)
    return out


def vol(top: MultiVector) -> Fraction:
    if top.grade != DIM:
        raise ValueError("vol needs a top-degree element")
    return top.coeffs.get(TOP, Fraction(0))


def interior(phi: Sequence, a: MultiVector) -> MultiVector:
    """Contraction of a by the linear functional phi (a covector on V)."""
    phi = [Q(x) for x in phi]
    if a.grade == 0:
        raise ValueError("cannot contract a scalar")
    out: dict[tuple[int, ...], Fraction] = {}
    for I, c in a.coeffs.items():
        for pos, i in enumerate(I):
            if phi[i]:
                K = I[:pos] + I[pos + 1:]
                out[K] = out.get(K, Fraction(0)) + (-1) ** pos * phi[i] * c
    return MultiVector(a.grade - 1, out)


def _symplectic_gram() -> list[list[int]]:
    B3 = BASIS[3]
    G = [[0] * 20 for _ in range(20)]
    for i, I in enumerate(B3):
        for j, J in enumerate(B3):
            G[i][j] = merge_sign(I, J)
    return G


OMEGA = _symplectic_gram()


def symplectic_pair(a: MultiVector, b: MultiVector) -> Fraction:
    """(a, b)_V = vol(a ^ b) on wedge^3 V."""
    if a.grade != 3 or b.grade != 3:
        raise ValueError("symplectic pairing is defined on grade-3 elements only")
    return vol(wedge(a, b))


def pair_coords(x: Sequence, y: Sequence) -> Fraction:
    """Symplectic pairing on 20-dimensional coordinate vectors."""
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            row = OMEGA[i]
            for j, yj in enumerate(y):
                if row[j] and yj:
                    total += row[j] * xi * yj
    return total


def pairing_matrix(X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[pair_coords(x, y) for y in Y] for x in X]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of wedge^k V held as an RREF basis of coordinate rows."""

    grade: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, grade: int, rows) -> "Subspace":
        rows = [r.coords() if isinstance(r, MultiVector) else list(map(Q, r)) for r in rows]
        n = len(BASIS[grade])
        if any(len(r) != n for r in rows):
            raise ValueError(f"rows must have {n} coordinates")
        R, _ = linalg.rref(rows) if rows else ([], [])
        return cls(grade, tuple(tuple(r) for r in R))

    @property
    def ambient_dim(self) -> int:
        return len(BASIS[self.grade])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[MultiVector]:
        return [MultiVector.from_coords(self.grade, r) for r in self.basis]

    def contains(self, x) -> bool:
        x = x.coords() if isinstance(x, MultiVector) else list(map(Q, x))
        return linalg.rank(list(self.basis) + [x]) == self.dim

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.grade != other.grade:
            raise ValueError("grade mismatch")
        if not self.basis or not other.basis:
            return Subspace(self.grade, ())
        # a.x = b.y  <=>  (x, -y) in left kernel of [A; B]
        stacked = list(self.basis) + [[-c for c in r] for r in other.basis]
        ker = linalg.left_nullspace(stacked)
        rows = [linalg.matvec(linalg.transpose(list(self.basis)), k[: self.dim]) for k in ker]
        return Subspace.span(self.grade, rows)

    def is_isotropic(self) -> bool:
        return self.grade == 3 and all(
            pair_coords(x, y) == 0 for i, x in enumerate(self.basis) for y in self.basis[i + 1:]
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.grade == other.grade and self.basis == other.basis

    def __hash__(self):
        return hash((self.grade, self.basis))


def wedge_map_matrix(v: Sequence, grade: int = 3) -> list[list[Fraction]]:
    """Rows: coordinates of v ^ e_I for e_I in the grade basis."""
    vv = MultiVector.vector(v)
    return [wedge(vv, MultiVector(grade, {I: 1})).coords() for I in BASIS[grade]]


def annihilator_F(v: Sequence) -> Subspace:
    """F_v = {alpha in wedge^3 V : v ^ alpha = 0}; a Lagrangian of dimension 10."""
    v = [Q(x) for x in v]
    if len(v) != DIM:
        raise ValueError(f"expected a vector with {DIM} coordinates")
    if not any(v):
        raise ValueError("F_v is undefined for v = 0")
    return Subspace(3, tuple(tuple(r) for r in linalg.left_nullspace(wedge_map_matrix(v))))


def exterior_power_matrix(g: Sequence[Sequence], k: int = 3) -> list[list[Fraction]]:
    """Matrix of wedge^k g acting on coordinate rows: x -> x . M.

    Row I holds the coordinates of g e_{i1} ^ ... ^ g e_{ik}, where g e_i is
    the i-th column of g.
    """
    cols = [MultiVector.vector([Q(g[r][c]) for r in range(DIM)]) for c in range(DIM)]
    return [wedge_all(*(cols[i] for i in I)).coords() for I in BASIS[k]]
