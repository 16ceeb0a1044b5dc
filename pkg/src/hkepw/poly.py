"""Sparse multivariate polynomials over Q and exact simplex interpolation."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import comb, gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Q


class Poly:
    """Polynomial in ``nvars`` variables: {exponent tuple: Fraction}."""

    __slots__ = ("nvars", "terms", "_int_cache")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms = {}
        for m, c in (terms or {}).items():
            c = Q(c)
            if c:
                if len(m) != nvars:
                    raise ValueError("exponent length mismatch")
                self.terms[tuple(m)] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): c})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Poly":
        n = len(coeffs)
        p = cls.constant(n, const)
        for i, c in enumerate(coeffs):
            if Q(c):
                p.terms[tuple(int(j == i) for j in range(n))] = Q(c)
        return p

    def copy(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = Q(other)
            p = Poly(self.nvars)
            if s:
                p.terms = {m: c * s for m, c in self.terms.items()}
            return p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, point: Sequence) -> Fraction:
        point = [Q(x) for x in point]
        if all(x.denominator == 1 for x in point) and self._int_terms() is not None:
            return Fraction(self._eval_int([x.numerator for x in point]), self._int_terms()[1])
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, a in zip(point, m):
                if a:
                    t *= x**a
            total += t
        return total

    def _int_terms(self):
        # (integer terms, common denominator), computed once per polynomial
        cached = getattr(self, "_int_cache", None)
        if cached is None:
            D = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
            cached = ([(m, int(c * D)) for m, c in self.terms.items()], D)
            object.__setattr__(self, "_int_cache", cached)
        return cached

    def _eval_int(self, x: Sequence[int]) -> int:
        deg = max((max(m) for m in self.terms), default=0)
        powers = []
        for xi in x:
            row = [1]
            for _ in range(deg):
                row.append(row[-1] * xi)
            powers.append(row)
        total = 0
        for m, c in self._int_terms()[0]:
            t = c
            for i, a in enumerate(m):
                if a:
                    t *= powers[i][a]
            total += t
        return total

    def __repr__(self):
        return f"Poly({self.nvars}, {len(self.terms)} terms, deg {self.degree()})"

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending lex order of exponents (x0 > x1 > ...)."""
        return sorted(self.terms.items(), reverse=True)

    def content_normalized(self) -> tuple["Poly", Fraction]:
        """(primitive integer polynomial with leading lex coefficient > 0, scale)

        The returned scale s satisfies self = s * normalized.
        """
        if not self.terms:
            return self.copy(), Fraction(1)
        D = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        g = reduce(gcd, (int(c * D) for c in self.terms.values()), 0)
        s = Fraction(g, D)
        if self.sorted_terms()[0][1] < 0:
            s = -s
        return self * (1 / s), s

    def substitute_linear(self, rows: Sequence[Sequence]) -> "Poly":
        """p(R x): variable j is replaced by sum_k rows[j][k] x_k."""
        m = len(rows[0]) if rows else self.nvars
        forms = [Poly.linear(r) for r in rows]
        cache: dict[tuple[int, int], Poly] = {}

        def power(j: int, a: int) -> Poly:
            if (j, a) not in cache:
                cache[(j, a)] = Poly.constant(m, 1) if a == 0 else power(j, a - 1) * forms[j]
            return cache[(j, a)]

        out = Poly(m)
        for mono, c in self.terms.items():
            term = Poly.constant(m, c)
            for j, a in enumerate(mono):
                if a:
                    term = term * power(j, a)
            out = out + term
        return out

    def homogenize(self, degree: int) -> "Poly":
        """New variable x0 in front: x0^(degree - deg m) * x^m."""
        out = {}
        for m, c in self.terms.items():
            d = sum(m)
            if d > degree:
                raise ValueError(f"monomial degree {d} exceeds {degree}")
            out[(degree - d,) + m] = c
        return Poly(self.nvars + 1, out)

    def to_json(self, key: str = "m") -> list[dict]:
        from .linalg import format_rational

        return [{key: list(m), "c": format_rational(c)} for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, items: Iterable[Mapping], key: str = "m") -> "Poly":
        terms: dict = {}
        for it in items:
            m = tuple(int(a) for a in it[key])
            terms[m] = terms.get(m, Fraction(0)) + Q(it["c"])
        return cls(nvars, terms)


def simplex_nodes(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Principal lattice {a in N^nvars : |a| <= degree}, in lex order."""
    return [a for a in product(range(degree + 1), repeat=nvars) if sum(a) <= degree]


def _binomial_poly(k: int) -> list[Fraction]:
    # coefficients of binom(t, k) in t^0..t^k
    coeffs = [Fraction(1)]
    for j in range(k):
        # multiply by (t - j) / (j + 1)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] -= j * c
        coeffs = [c / (j + 1) for c in new]
    return coeffs


def interpolate_simplex(values: Mapping[tuple[int, ...], Fraction], nvars: int, degree: int) -> Poly:
    """The unique polynomial of total degree <= degree matching ``values`` on
    the principal lattice.  Newton forward differences, one axis at a time,
    then conversion from the binomial basis to monomials.
    """
    c = {a: Q(values[a]) for a in simplex_nodes(nvars, degree)}
    # forward differences along each axis in turn; after axis i the entry at a
    # holds Delta_0^{a_0} ... Delta_i^{a_i} f evaluated at (0,..,0, a_{i+1}, ...)
    for axis in range(nvars):
        for step in range(1, degree + 1):
            # highest index first so lower entries stay untouched this round
            for a in sorted(c, key=lambda a: -a[axis]):
                if a[axis] >= step:
                    b = a[:axis] + (a[axis] - 1,) + a[axis + 1:]
                    c[a] = c[a] - c[b]
    # binomial basis -> monomials, axis by axis
    binom = [_binomial_poly(k) for k in range(degree + 1)]
    cur = dict(c)
    for axis in range(nvars):
        nxt: dict = {}
        for a, coef in cur.items():
            if not coef:
                continue
            for p, bc in enumerate(binom[a[axis]]):
                if bc:
                    m = a[:axis] + (p,) + a[axis + 1:]
                    nxt[m] = nxt.get(m, Fraction(0)) + coef * bc
        cur = nxt
    return Poly(nvars, cur)


def interpolate(f: Callable[[tuple[int, ...]], Fraction], nvars: int, degree: int,
                mapper: Callable | None = None) -> Poly:
    nodes = simplex_nodes(nvars, degree)
    vals = list(mapper(f, nodes)) if mapper else [f(a) for a in nodes]
    return interpolate_simplex(dict(zip(nodes, vals)), nvars, degree)


def num_nodes(nvars: int, degree: int) -> int:
    return comb(nvars + degree, nvars)
