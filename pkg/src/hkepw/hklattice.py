"""Integral lattices for the second cohomology of hyperkaehler manifolds.

Conventions
-----------
U is the hyperbolic plane [[0, 1], [1, 0]].  E8(-1) is minus the Cartan matrix
of E8 in Bourbaki numbering (nodes 1..8, edges 1-3, 3-4, 4-5, 5-6, 6-7, 7-8,
2-4): diagonal -2, +1 on edges.  This matrix is frozen; fixtures depend on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import ceil, floor, gcd, isqrt
from typing import Sequence

from . import linalg

U_GRAM = ((0, 1), (1, 0))
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))
E8_NEG_GRAM = tuple(
    tuple(-2 if i == j else (1 if (i + 1, j + 1) in _E8_EDGES or (j + 1, i + 1) in _E8_EDGES else 0) for j in range(8))
    for i in range(8)
)


class UnsupportedLattice(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    def __init__(self, message: str, certificate):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        if not linalg.is_symmetric(g):
            raise ValueError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self) -> int:
        return linalg.det_int(self.gram)

    def signature(self) -> tuple[int, int]:
        return linalg.signature(self.gram)

    def _check(self, v):
        if len(v) != self.rank:
            raise ValueError(f"vector length {len(v)} does not match rank {self.rank}")

    def gv(self, v: Sequence[int]) -> list[int]:
        self._check(v)
        return [sum(g * x for g, x in zip(row, v)) for row in self.gram]

    def bilinear(self, v: Sequence, w: Sequence):
        self._check(w)
        return sum(a * b for a, b in zip(self.gv(v), w))

    def qform(self, v: Sequence):
        return self.bilinear(v, v)

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, obj) -> "IntegralLattice":
        if obj == "k3n2":
            return k3n_lattice(2)
        return cls(tuple(tuple(r) for r in obj["gram"]), obj.get("name", ""))


def direct_sum(*blocks: Sequence[Sequence[int]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def _summand(token) -> tuple[tuple[int, ...], ...]:
    if isinstance(token, int):
        return ((token,),)
    t = str(token).replace(" ", "")
    if t == "U":
        return U_GRAM
    if t in ("E8(-1)", "E8"):
        return E8_NEG_GRAM
    if t.startswith("<") and t.endswith(">"):
        return ((int(t[1:-1]),),)
    raise ValueError(f"unknown summand {token!r}; use U, E8(-1) or <m>")


def build_lattice(summands: Sequence, name: str = "") -> IntegralLattice:
    """Orthogonal direct sum of U, E8(-1) and <m> summands (ints mean <m>)."""
    gram = direct_sum(*[_summand(s) for s in summands])
    return IntegralLattice(tuple(tuple(r) for r in gram), name)


def k3n_lattice(n: int) -> IntegralLattice:
    """U^3 + E8(-1)^2 + <-2(n-1)>; the last basis vector is xi.  n = 1 gives
    the unimodular K3 lattice (rank 22, no xi)."""
    if n <= 0:
        raise ValueError("n must be positive")
    base = ["U"] * 3 + ["E8(-1)"] * 2
    if n == 1:
        return build_lattice(base, "K3")
    return build_lattice(base + [-2 * (n - 1)], f"K3^[{n}]")


def xi(n: int = 2) -> list[int]:
    return [0] * 22 + [1]


def divisibility(L: IntegralLattice, v: Sequence[int]) -> int:
    if not any(v):
        raise ValueError("divisibility of the zero vector is undefined")
    return reduce(gcd, L.gv(v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (int(x) for x in v), 0) == 1


def same_orbit_k3sq(L: IntegralLattice, v: Sequence[int], w: Sequence[int]) -> bool:
    """Orbit test for primitive vectors of the K3^[2] lattice: equal (q, div)."""
    if L.gram != k3n_lattice(2).gram:
        raise UnsupportedLattice("orbit test is only supported on the K3^[2] lattice")
    if not (is_primitive(v) and is_primitive(w)):
        raise ValueError("orbit test needs primitive vectors")
    return L.qform(v) == L.qform(w) and divisibility(L, v) == divisibility(L, w)


@dataclass(frozen=True)
class EmbeddedSublattice:
    ambient: IntegralLattice
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in r) for r in self.basis)
        if any(len(r) != self.ambient.rank for r in b):
            raise ValueError("basis rows must have the ambient rank")
        if linalg.rank(b) != len(b):
            raise ValueError("basis rows must be independent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def whole(cls, L: IntegralLattice) -> "EmbeddedSublattice":
        return cls(L, tuple(tuple(int(i == j) for j in range(L.rank)) for i in range(L.rank)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice(self) -> IntegralLattice:
        G = self.ambient.gram
        gram = [[sum(a * G[i][j] * b for i, a in enumerate(u) if a for j, b in enumerate(w) if b)
                 for w in self.basis] for u in self.basis]
        return IntegralLattice(tuple(tuple(r) for r in gram))

    def to_ambient(self, coords: Sequence[int]) -> list[int]:
        return [sum(c * row[j] for c, row in zip(coords, self.basis)) for j in range(self.ambient.rank)]

    def ambient_divisibility(self, coords: Sequence[int]) -> int:
        return divisibility(self.ambient, self.to_ambient(coords))

    def to_json(self) -> dict:
        amb = "k3n2" if self.ambient.gram == k3n_lattice(2).gram else self.ambient.to_json()
        return {"ambient": amb, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "EmbeddedSublattice":
        return cls(IntegralLattice.from_json(obj["ambient"]), tuple(tuple(r) for r in obj["basis"]))


def as_sublattice(P) -> EmbeddedSublattice:
    return P if isinstance(P, EmbeddedSublattice) else EmbeddedSublattice.whole(P)


@dataclass(frozen=True)
class QClass:
    coords: tuple[int, ...]
    q: int
    div: int  # in the ambient lattice


def _ldl(G: Sequence[Sequence[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """G = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2 for positive definite G."""
    n = len(G)
    A = [list(map(Fraction, r)) for r in G]
    d, mu = [], [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        piv = A[i][i]
        if piv <= 0:
            raise NotPositiveDefinite("form is not positive definite", {"pivot_index": i, "pivot": piv})
        d.append(piv)
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / piv
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= A[i][j] * A[i][k] / piv
    return d, mu


def short_vectors(G: Sequence[Sequence], bound) -> list[tuple[int, ...]]:
    """All integer x with x^T G x <= bound, G positive definite (Fincke-Pohst)."""
    n = len(G)
    d, mu = _ldl(G)
    bound = Fraction(bound)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        # integers a with d_i (a + c)^2 <= remaining
        T = remaining / d[i]
        r = isqrt(floor(T)) + 1
        lo, hi = floor(-c) - r, ceil(-c) + r
        for a in range(lo, hi + 1):
            v = d[i] * (a + c) ** 2
            if v <= remaining:
                x[i] = a
                if i == 0:
                    out.append(tuple(x))
                else:
                    rec(i - 1, remaining - v)
        x[i] = 0

    if bound >= 0:
        rec(n - 1, bound)
    return sorted(out)


def qdef_gram(L: IntegralLattice, x: Sequence[int]) -> list[list[Fraction]]:
    """Gram of q_def(a) = 2 (a, x)^2 / q(x) - q(a)."""
    gx = L.gv(x)
    qx = Fraction(L.qform(x))
    return [[2 * gx[i] * gx[j] / qx - L.gram[i][j] for j in range(L.rank)] for i in range(L.rank)]


def _hyperbolic_check(L: IntegralLattice, x: Sequence[int]):
    if L.qform(x) <= 0:
        raise ValueError("x must have positive square")
    sig = L.signature()
    if sig != (1, L.rank - 1):
        raise ValueError(f"sublattice must have signature (1, {L.rank - 1}), got {sig}")


def enumerate_q_classes(P, x: Sequence[int], q0: int, bound) -> list[QClass]:
    """All a in P with q(a) = q0 and q_def,x(a) <= bound (both signs)."""
    P = as_sublattice(P)
    L = P.lattice
    if q0 >= 0:
        raise ValueError("q0 must be negative")
    _hyperbolic_check(L, x)
    out = []
    for a in short_vectors(qdef_gram(L, x), bound):
        if any(a) and L.qform(a) == q0:
            out.append(QClass(a, q0, P.ambient_divisibility(a)))
    return out


def _segment_max(L: IntegralLattice, h0, h1) -> Fraction:
    """max over t in [0,1] of (h0, x_t)^2 / q(x_t) - q(h0), x_t = (1-t) h0 + t h1."""
    q0, q1, p = L.qform(h0), L.qform(h1), L.bilinear(h0, h1)
    a, b = q0, p - q0  # (h0, x_t) = a + b t
    c, dd, e = q0, 2 * (p - q0), q0 + q1 - 2 * p  # q(x_t) = c + dd t + e t^2
    cands = [Fraction(0), Fraction(1)]
    if b:
        cands.append(Fraction(-a, b))
    if b * dd - 2 * a * e:
        cands.append(Fraction(a * dd - 2 * b * c, b * dd - 2 * a * e))
    best = None
    for t in cands:
        if 0 <= t <= 1:
            qt = c + dd * t + e * t * t
            val = (a + b * t) ** 2 / qt - q0
            best = val if best is None else max(best, val)
    return best


WALL_TYPES = {-2: "q=-2", -10: "q=-10,div=2"}


def wall_bound(L: IntegralLattice, h0, h1, q0: int) -> int:
    M = _segment_max(L, h0, h1)
    return ceil(2 * (-q0) * M / L.qform(h0) - q0)


def separating_walls(P, h0: Sequence[int], h1: Sequence[int]) -> list[tuple[tuple[int, ...], str]]:
    """Wall classes a (q = -2, or q = -10 with div 2) whose hyperplane meets the segment [h0, h1]."""
    P = as_sublattice(P)
    L = P.lattice
    if L.qform(h0) <= 0 or L.qform(h1) <= 0 or L.bilinear(h0, h1) <= 0:
        raise ValueError("h0, h1 must have positive square and positive pairing")
    out = []
    for q0, label in WALL_TYPES.items():
        for cl in enumerate_q_classes(P, h0, q0, wall_bound(L, h0, h1, q0)):
            if q0 == -10 and cl.div != 2:
                continue
            p0, p1 = L.bilinear(cl.coords, h0), L.bilinear(cl.coords, h1)
            if p0 * p1 <= 0 and (p0, p1) != (0, 0):
                out.append((cl.coords, label))
    return sorted(out)


def _sign_normalized(v: tuple[int, ...]) -> tuple[int, ...]:
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


@dataclass(frozen=True)
class AmpleVerdict:
    ample_by_HT: bool
    blocked_by: tuple[tuple[int, ...], ...] = ()
    note: str = "sufficient criterion only; necessity is conjectural and not asserted"

    def to_json(self) -> dict:
        if self.ample_by_HT:
            return {"verdict": "ample_by_HT", "note": self.note}
        return {"verdict": "blocked_by", "walls": [list(a) for a in self.blocked_by], "note": self.note}


def ht_ample_verdict(P, h0: Sequence[int], L_class: Sequence[int]) -> AmpleVerdict:
    P = as_sublattice(P)
    L = P.lattice
    if L.qform(L_class) <= 0 or L.bilinear(L_class, h0) <= 0:
        raise ValueError("L must lie in the positive cone component of h0")
    walls = sorted({_sign_normalized(a) for a, _ in separating_walls(P, h0, L_class)})
    return AmpleVerdict(not walls, tuple(walls))
