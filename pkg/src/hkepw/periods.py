"""Rational period points sigma = x + i y in a lattice and their integral (1,1) part.

Very general periods have no exact representative; everything here goes the
other way and produces rational periods, whose Picard lattice has rank at
least rank(L) - 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import isqrt
from typing import Sequence

from . import linalg
from .hklattice import EmbeddedSublattice, IntegralLattice
from .intmat import integer_kernel, is_saturated
from .linalg import Q, format_rational


class PeriodSearchError(RuntimeError):
    pass


def _pair(L: IntegralLattice, u, v) -> Fraction:
    return sum((Q(L.gram[i][j]) * u[i] * v[j] for i in range(L.rank) if u[i] for j in range(L.rank) if v[j]), Fraction(0))


@dataclass(frozen=True)
class PeriodCheck:
    ok: bool
    failing: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_period(L: IntegralLattice, x: Sequence, y: Sequence) -> PeriodCheck:
    """(s, s) = 0 and (s, s-bar) > 0 for s = x + i y."""
    if len(x) != L.rank or len(y) != L.rank:
        raise ValueError("coordinate lengths must match the lattice rank")
    x, y = [Q(a) for a in x], [Q(a) for a in y]
    qx, qy, pxy = _pair(L, x, x), _pair(L, y, y), _pair(L, x, y)
    failing = []
    if qx != qy:
        failing.append("q(x) != q(y)")
    if pxy != 0:
        failing.append("(x, y) != 0")
    if qx + qy <= 0:
        failing.append("q(x) + q(y) <= 0")
    return PeriodCheck(not failing, tuple(failing))


@dataclass(frozen=True)
class PeriodPoint:
    lattice: IntegralLattice
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Q(a) for a in self.x))
        object.__setattr__(self, "y", tuple(Q(a) for a in self.y))
        chk = is_period(self.lattice, self.x, self.y)
        if not chk:
            raise ValueError("not a period point: " + ", ".join(chk.failing))

    def to_json(self) -> dict:
        return {
            "x": [format_rational(a) for a in self.x],
            "y": [format_rational(a) for a in self.y],
            "lattice": self.lattice.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "PeriodPoint":
        return cls(IntegralLattice.from_json(obj["lattice"]), tuple(obj["x"]), tuple(obj["y"]))


def picard_of_period(p: PeriodPoint) -> EmbeddedSublattice:
    """Integral kernel {g : (g, x) = (g, y) = 0}, basis in Hermite form."""
    L = p.lattice
    rows = [linalg.primitive_integer_row(linalg.matvec(L.gram, v)) for v in (p.x, p.y)]
    K = integer_kernel(rows, L.rank)
    assert is_saturated(K) if K else True
    return EmbeddedSublattice(L, tuple(tuple(r) for r in K))


def _vectors_by_height(n: int, max_height: int, max_support: int):
    """Integer coefficient vectors ordered by (max-norm, support size, lex)."""
    for h in range(1, max_height + 1):
        for s in range(1, min(n, max_support) + 1):
            for supp in combinations(range(n), s):
                for vals in product(range(-h, h + 1), repeat=s):
                    if 0 in vals or max(abs(v) for v in vals) != h:
                        continue
                    v = [0] * n
                    for i, a in zip(supp, vals):
                        v[i] = a
                    yield v


def _square_ratio(a: Fraction, b: Fraction) -> Fraction | None:
    """s with a = s^2 b, if one exists in Q."""
    r = a / b
    if r <= 0:
        return None
    n, d = r.numerator, r.denominator
    rn, rd = isqrt(n), isqrt(d)
    return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None


def period_orthogonal_to(L: IntegralLattice, alpha: Sequence[int], max_height: int = 2,
                         max_support: int = 2, max_candidates: int = 400) -> PeriodPoint:
    """Deterministic search for a rational period with alpha in its Picard lattice.

    Candidates u in alpha^perp come from integer combinations of a kernel basis,
    in (height, support, lex) order; the first orthogonal pair u, w with q(u),
    q(w) > 0 and q(u)/q(w) a rational square gives x = u, y = (q(u)/q(w))^(1/2) w.
    """
    if len(alpha) != L.rank:
        raise ValueError("alpha has the wrong length")
    K = integer_kernel([L.gv(alpha)], L.rank)
    cands: list[tuple[list[int], int]] = []
    for coeffs in _vectors_by_height(len(K), max_height, max_support):
        u = [sum(c * K[a][j] for a, c in enumerate(coeffs) if c) for j in range(L.rank)]
        qu = L.qform(u)
        if qu > 0:
            for w, qw in cands:
                if L.bilinear(u, w) == 0:
                    s = _square_ratio(Fraction(qw), Fraction(qu))
                    if s is not None:
                        return PeriodPoint(L, tuple(w), tuple(s * a for a in u))
            cands.append((u, qu))
            if len(cands) >= max_candidates:
                break
    raise PeriodSearchError("no positive 2-plane found within height bound")


def u_pair_period(L: IntegralLattice | None = None) -> PeriodPoint:
    """x = e + f in the first U, y = e' + f' in the second."""
    from .hklattice import k3n_lattice

    L = L or k3n_lattice(2)
    x = [0] * L.rank
    y = [0] * L.rank
    x[0] = x[1] = 1
    y[2] = y[3] = 1
    return PeriodPoint(L, tuple(x), tuple(y))
