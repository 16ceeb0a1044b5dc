"""EPW sextics: extraction, stratification, witnesses and the local double cover.

Affine charts
-------------
A chart is a point v0 together with a basis u_1..u_5 of a hyperplane V0 not
containing it.  With B = wedge^3 V0 transverse to A, the Lagrangian A is the
graph of a symmetric q_A over F_{v0} = v0 ^ wedge^2 V0, and the point
[t0 v0 + sum t_k u_k] lies on Y_A iff det(t0 q_A + q_w) = 0, w = sum t_k u_k,
where q_w(a, b) = vol(v0 ^ w ^ a ^ b).  The degree-10 form det(t0 q_A + q_w)
is t0^4 times the sextic; the affine part det(q_A + q_w) has degree <= 6 and is
recovered by interpolation on the principal lattice of degree 6 (462 nodes).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import linalg
from .exterior import DIM, MultiVector, annihilator_F, interior, vol, wedge, wedge_all
from .linalg import Q, format_rational
from .poly import Poly, interpolate_simplex, simplex_nodes
from .seeding import random_unimodular, random_vector, task_rng
from .symplag import (
    LagrangianSubspace,
    SymmetricChartMatrix,
    TransversalityError,
    complete_to_lagrangian,
    dual_basis,
    fv_rows,
    graph_matrix,
    intersection_dim,
    transverse,
    wedge3_rows,
)

SEXTIC_NODES_DEGREE = 6
N_CHECK_POINTS = 50
CHART_SEED = 0


class SexticError(RuntimeError):
    """Interpolated polynomial failed the extra-node check on every chart."""


class ChartError(RuntimeError):
    """No chart with wedge^3 V0 transverse to A was found."""


# ---------------------------------------------------------------- charts


@dataclass(frozen=True)
class Chart:
    v0: tuple[Fraction, ...]
    complement: tuple[tuple[Fraction, ...], ...]
    label: str = ""

    def matrix(self) -> list[list[Fraction]]:
        """g with columns v0, u_1..u_5; chart coordinates t satisfy x = g t."""
        cols = [self.v0, *self.complement]
        return [[cols[c][r] for c in range(DIM)] for r in range(DIM)]

    def point(self, t: Sequence) -> list[Fraction]:
        return linalg.matvec(self.matrix(), [Q(x) for x in t])


def coordinate_chart(i: int) -> Chart:
    unit = [tuple(Fraction(int(r == c)) for r in range(DIM)) for c in range(DIM)]
    return Chart(unit[i], tuple(unit[j] for j in range(DIM) if j != i), f"coordinate e{i}")


def chart_from_matrix(g: Sequence[Sequence], label: str = "") -> Chart:
    cols = [tuple(Q(g[r][c]) for r in range(DIM)) for c in range(DIM)]
    return Chart(cols[0], tuple(cols[1:]), label)


def chart_candidates(n_random: int = 20, seed: int = CHART_SEED):
    """Coordinate charts v0 = e_0..e_5 first, then seeded unimodular changes."""
    for i in range(DIM):
        yield coordinate_chart(i)
    for j in range(n_random):
        yield chart_from_matrix(random_unimodular(task_rng(seed, "chart", j)), f"unimodular #{j}")


def chart_is_transverse(A: LagrangianSubspace, chart: Chart) -> bool:
    return transverse(A.rows, wedge3_rows(chart.complement))


def pluecker_quadric(v0: Sequence, V0: Sequence[Sequence], v: Sequence) -> list[list[Fraction]]:
    """Matrix of q_v(a, b) = vol(v0 ^ v ^ a ^ b) on the lex basis u_a ^ u_b of wedge^2 V0."""
    V0 = [[Q(x) for x in u] for u in V0]
    v = [Q(x) for x in v]
    if linalg.rank(V0 + [v]) != linalg.rank(V0):
        raise ValueError("v does not lie in V0")
    head = wedge(MultiVector.vector(v0), MultiVector.vector(v))
    us = [MultiVector.vector(u) for u in V0]
    alphas = [wedge(us[a], us[b]) for a, b in combinations(range(len(us)), 2)]
    heads = [wedge(head, al) for al in alphas]
    return [[vol(wedge(h, b)) for b in alphas] for h in heads]


@dataclass(frozen=True)
class ChartData:
    chart: Chart
    q_A: tuple[tuple[Fraction, ...], ...]
    q_u: tuple  # Pluecker matrices of u_1..u_5

    @property
    def v0(self):
        return self.chart.v0

    @property
    def V0(self):
        return self.chart.complement

    def matrix_at(self, t: Sequence) -> list[list[Fraction]]:
        """t0 q_A + q_w for homogeneous chart coordinates t = (t0, t1..t5)."""
        t = [Q(x) for x in t]
        return [
            [t[0] * self.q_A[i][j] + sum((t[k + 1] * self.q_u[k][i][j] for k in range(5)), Fraction(0))
             for j in range(10)]
            for i in range(10)
        ]

    def determinant(self, t: Sequence) -> Fraction:
        """The degree-10 form det(t0 q_A + q_w)."""
        return linalg.det(self.matrix_at(t))


def chart_data_for(A: LagrangianSubspace, chart: Chart) -> ChartData:
    B0 = wedge3_rows(chart.complement)
    A0 = fv_rows(chart.v0, chart.complement)
    if not transverse(A.rows, B0):
        raise TransversalityError(f"wedge^3 V0 is not transverse to A in chart {chart.label}")
    qA = graph_matrix(A.rows, A0, B0)
    q_u = tuple(
        tuple(tuple(r) for r in pluecker_quadric(chart.v0, chart.complement, u)) for u in chart.complement
    )
    return ChartData(chart, tuple(tuple(r) for r in qA), q_u)


def chart_data(A: LagrangianSubspace, n_random: int = 20) -> ChartData:
    """First chart (coordinate, then seeded fallback) with wedge^3 V0 transverse to A."""
    for chart in chart_candidates(n_random):
        if chart_is_transverse(A, chart):
            return chart_data_for(A, chart)
    raise ChartError(f"no transverse coordinate chart found after {DIM + n_random} trials")


# ---------------------------------------------------------------- sextic


@dataclass(frozen=True, eq=False)
class SexticForm:
    """Degree-6 form in x0..x5, normalized (primitive integral, leading lex
    coefficient positive), or the flag ``whole_space`` when Y_A = P(V)."""

    poly: Poly
    whole_space: bool = False
    chart_label: str = ""

    def __post_init__(self):
        if not self.whole_space:
            if self.poly.is_zero():
                raise ValueError("use whole_space=True for the zero form")
            if self.poly.degree() != 6 or not self.poly.is_homogeneous():
                raise ValueError("sextic must be homogeneous of degree 6")

    def __call__(self, x: Sequence) -> Fraction:
        return self.poly(x)

    def __eq__(self, other):
        if not isinstance(other, SexticForm):
            return NotImplemented
        return self.whole_space == other.whole_space and self.poly == other.poly

    def __hash__(self):
        return hash((self.whole_space, self.poly))

    @property
    def degree(self) -> int:
        return -1 if self.whole_space else 6

    def to_json(self) -> dict:
        out = {"vars": 6, "degree": 6, "coeffs": self.poly.to_json("m")}
        if self.whole_space:
            out["whole_space"] = True
        return out

    @classmethod
    def from_json(cls, obj) -> "SexticForm":
        p = Poly.from_json(6, obj["coeffs"], "m")
        if obj.get("whole_space") or p.is_zero():
            return cls(Poly(6), True)
        return cls(p.content_normalized()[0])


def normalize_form(p: Poly, label: str = "") -> SexticForm:
    if p.is_zero():
        return SexticForm(Poly(6), True, label)
    return SexticForm(p.content_normalized()[0], False, label)


def _check_points(n: int = N_CHECK_POINTS) -> list[tuple[int, ...]]:
    # deterministic low-height points, mostly off the interpolation lattice
    return [tuple(((37 * j + 11 * k * k + 5 * k + 3) % 13) - 6 for k in range(5)) for j in range(n)]


@dataclass(frozen=True)
class ChartSextic:
    """Raw (unnormalized) chart data behind a sextic."""

    data: ChartData
    affine: Poly  # det(q_A + q_w) in t1..t5
    homogeneous: Poly  # in t0..t5

    def in_ambient(self) -> Poly:
        """The sextic in x-coordinates: H(g^{-1} x)."""
        ginv = linalg.inverse(self.data.chart.matrix())
        return self.homogeneous.substitute_linear(ginv)


def _affine_det_function(cd: ChartData) -> Callable[[Sequence], Fraction]:
    ints, D = linalg.scale_to_integers([list(r) for r in cd.q_A] + [list(r) for m in cd.q_u for r in m])
    qa = ints[:10]
    qu = [ints[10 * (k + 1): 10 * (k + 2)] for k in range(5)]
    scale = Fraction(1, D**10)

    def f(t):
        if all(isinstance(x, int) for x in t):
            M = [[qa[i][j] + sum(t[k] * qu[k][i][j] for k in range(5)) for j in range(10)] for i in range(10)]
            return linalg.det_int(M) * scale
        return cd.determinant((1, *t))

    return f


class DegreeMismatch(ValueError):
    pass


def chart_sextic(A: LagrangianSubspace, chart: Chart, mapper=None) -> ChartSextic:
    cd = chart_data_for(A, chart)
    f = _affine_det_function(cd)
    nodes = simplex_nodes(5, SEXTIC_NODES_DEGREE)
    vals = list(mapper(f, nodes)) if mapper else [f(a) for a in nodes]
    affine = interpolate_simplex(dict(zip(nodes, vals)), 5, SEXTIC_NODES_DEGREE)
    for pt in _check_points():
        if affine(pt) != f(pt):
            raise DegreeMismatch(f"degree exceeds 6 in chart {chart.label}: check point {pt} disagrees")
    return ChartSextic(cd, affine, affine.homogenize(6))


def sextic(A: LagrangianSubspace, n_random: int = 20, mapper=None) -> SexticForm:
    """Y_A as a normalized sextic form, or the whole_space flag if Y_A = P(V)."""
    failures = []
    found_chart = False
    for chart in chart_candidates(n_random):
        if not chart_is_transverse(A, chart):
            continue
        found_chart = True
        try:
            cs = chart_sextic(A, chart, mapper)
        except DegreeMismatch as exc:
            failures.append(str(exc))
            continue
        if cs.affine.is_zero():
            return SexticForm(Poly(6), True, chart.label)
        return normalize_form(cs.in_ambient(), chart.label)
    if not found_chart:
        raise ChartError(f"no transverse coordinate chart found after {DIM + n_random} trials")
    raise SexticError("degree exceeds 6 on every chart tried: " + "; ".join(failures))


def sextic_via_chart(A: LagrangianSubspace, chart: Chart) -> SexticForm:
    cs = chart_sextic(A, chart)
    if cs.affine.is_zero():
        return SexticForm(Poly(6), True, chart.label)
    return normalize_form(cs.in_ambient(), chart.label)


def pullback(form: SexticForm, g: Sequence[Sequence]) -> SexticForm:
    """The normalized form x -> S(g x).

    Recovered by interpolating S(g (1, t)) on the degree-6 principal lattice and
    homogenizing; exact, and much cheaper than expanding S(g x) symbolically.
    """
    if form.whole_space:
        return form
    g = [[Q(x) for x in row] for row in g]

    def f(t):
        return form(linalg.matvec(g, (1, *t)))

    nodes = simplex_nodes(5, 6)
    affine = interpolate_simplex({a: f(a) for a in nodes}, 5, 6)
    return normalize_form(affine.homogenize(6))


# ---------------------------------------------------------------- strata


@dataclass(frozen=True)
class StratumReport:
    k: int
    stratum: str
    tau_corank: int | None = None

    @property
    def on_sextic(self) -> bool:
        return self.k >= 1


def _classical_B_for(A: LagrangianSubspace, v: Sequence):
    for i in range(DIM):
        if v[i] != 0:
            chart = coordinate_chart(i)
            B = wedge3_rows(chart.complement)
            if transverse(A.rows, B):
                return B
    return None


def stratify_point(A: LagrangianSubspace, v: Sequence) -> StratumReport:
    v = [Q(x) for x in v]
    k = intersection_dim(A, v)
    corank = None
    B = _classical_B_for(A, v)
    if B is not None:
        T = graph_matrix([list(r) for r in annihilator_F(v).basis], A.rows, B)
        corank = 10 - linalg.rank(T)
        if corank != k:
            raise AssertionError(f"tau corank {corank} disagrees with dim(A ∩ F_v) = {k}")
    return StratumReport(k, f"Y_A[{k}]", corank)


def contains_wedge3(A: LagrangianSubspace, W: Sequence[Sequence]) -> bool:
    """True iff the line wedge^3 W lies in A (certifies A in Sigma)."""
    W = [[Q(x) for x in w] for w in W]
    if len(W) != 3 or linalg.rank(W) != 3:
        raise ValueError("W must be spanned by 3 independent vectors")
    return A.contains(wedge3_rows(W)[0])


# ---------------------------------------------------------------- classification

LABELS = ("off_sextic", "etale_double", "fixed_smooth", "surface_A1", "deep")


@dataclass(frozen=True)
class PointClass:
    k: int
    label: str
    decomposable_witness: MultiVector | None = None
    decomposable_over_C: bool = False

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "label": self.label,
            "decomposable_over_C": self.decomposable_over_C,
            "decomposable_witness": None if self.decomposable_witness is None else self.decomposable_witness.to_json(),
        }


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of univariate polynomials given low-to-high."""

    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + shift] -= f * c
            r = trim(r)
        a, b = b, r
    return [c / a[-1] for c in a] if a else []


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None


def decomposable_in_pencil(v: Sequence, omega1: MultiVector, omega2: MultiVector):
    """Search s*omega1 + t*omega2 (both in F_v) for a decomposable v ^ v1 ^ v2.

    Returns (exists_over_C, rational witness or None).  Decomposability of v ^ eta
    is eta ^ eta = 0 modulo v, i.e. v ^ eta ^ eta = 0 in wedge^5 V; along the
    pencil this is a system of binary quadrics in (s : t).
    """
    v = [Q(x) for x in v]
    p = next(i for i, x in enumerate(v) if x)
    phi = [Fraction(0)] * DIM
    phi[p] = 1 / v[p]
    vv = MultiVector.vector(v)
    eta1, eta2 = interior(phi, omega1), interior(phi, omega2)
    P11 = wedge_all(vv, eta1, eta1).coords()
    P12 = wedge_all(vv, eta1, eta2).coords()
    P22 = wedge_all(vv, eta2, eta2).coords()
    # quadric_c(s, t) = P11 s^2 + 2 P12 s t + P22 t^2 ; in x = s/t: [P22, 2 P12, P11]
    forms = [[c22, 2 * c12, c11] for c11, c12, c22 in zip(P11, P12, P22)]
    forms = [f for f in forms if any(f)]
    if not forms:
        return True, omega1
    if all(f[2] == 0 for f in forms):
        # (s : t) = (1 : 0) is a common root
        return True, omega1
    g = forms[0]
    for f in forms[1:]:
        g = _poly_gcd(g, f)
    g = _poly_gcd(g, g)  # monic
    if len(g) <= 1:
        return False, None
    if len(g) == 2:
        x0 = -g[0]
        return True, omega1 * x0 + omega2
    # quadratic gcd: roots over C always exist; rational iff discriminant is a square
    c0, c1 = g[0], g[1]
    root = _rational_sqrt(c1 * c1 - 4 * c0)
    if root is None:
        return True, None
    x0 = (-c1 + root) / 2
    return True, omega1 * x0 + omega2


def classify_point(A: LagrangianSubspace, v: Sequence) -> PointClass:
    v = [Q(x) for x in v]
    k = intersection_dim(A, v)
    if k == 0:
        return PointClass(0, "off_sextic")
    if k == 1:
        return PointClass(1, "etale_double")
    if k >= 3:
        return PointClass(k, "deep")
    inter = A.subspace().intersect(annihilator_F(v)).vectors()
    exists, witness = decomposable_in_pencil(v, inter[0], inter[1])
    if exists:
        return PointClass(2, "surface_A1", witness, True)
    return PointClass(2, "fixed_smooth")


# ---------------------------------------------------------------- local model


@dataclass
class ChartModel:
    """f_A^{-1}(Y_A ∩ U_B) near [v]: ideal generated by M.Z and Z.Z^t - M^c.

    Variables of the generators: t1..t5 (chart, centred at v) then z1..z10.
    """

    A: LagrangianSubspace
    v: tuple[Fraction, ...]
    hyperplane: tuple[tuple[Fraction, ...], ...]  # basis u_1..u_5 of V0
    k: int
    M: list[list[Poly]]  # affine polynomials in t1..t5
    congruence: list[list[Fraction]]  # rows: kernel basis, then diagonalizing basis of J
    diagonal: list[Fraction]  # nonzero diagonal of the J block at the centre
    _cofactors: list[list[Poly]] | None = field(default=None, repr=False)

    NV = 15

    def matrix_at(self, t: Sequence) -> list[list[Fraction]]:
        return [[p(t) for p in row] for row in self.M]

    @property
    def cofactors(self) -> list[list[Poly]]:
        """M^c as degree <= 9 polynomials, by interpolation of exact adjugates."""
        if self._cofactors is None:
            nodes = simplex_nodes(5, 9)
            adjs = [linalg.adjugate(self.matrix_at(a)) for a in nodes]
            C = [[None] * 10 for _ in range(10)]
            for i in range(10):
                for j in range(i, 10):
                    p = interpolate_simplex({a: adj[i][j] for a, adj in zip(nodes, adjs)}, 5, 9)
                    C[i][j] = C[j][i] = p
            self._cofactors = C
        return self._cofactors

    def _lift_t(self, p: Poly) -> Poly:
        return Poly(self.NV, {m + (0,) * 10: c for m, c in p.terms.items()})

    def _z(self, i: int) -> Poly:
        return Poly.var(self.NV, 5 + i)

    @property
    def mz(self) -> list[Poly]:
        out = []
        for i in range(10):
            p = Poly(self.NV)
            for j in range(10):
                p = p + self._lift_t(self.M[i][j]) * self._z(j)
            out.append(p)
        return out

    @property
    def zz(self) -> list[Poly]:
        """Entries (i <= j) of Z.Z^t - M^c: 55 generators."""
        C = self.cofactors
        return [self._z(i) * self._z(j) - self._lift_t(C[i][j]) for i in range(10) for j in range(i, 10)]

    def generators(self) -> list[Poly]:
        return self.mz + self.zz

    def reduced_matrix(self) -> list[list[Poly]]:
        """P M(t) P^t with P = congruence: diag(0_k, D) at the centre."""
        P = self.congruence
        out = []
        for a in range(10):
            row = []
            for b in range(10):
                p = Poly(5)
                for i in range(10):
                    if P[a][i]:
                        for j in range(10):
                            if P[b][j]:
                                p = p + self.M[i][j] * (P[a][i] * P[b][j])
                row.append(p)
            out.append(row)
        return out

    @property
    def M0(self) -> list[list[Poly]]:
        """The k x k block of the reduced matrix (affine part of the reduced block)."""
        R = self.reduced_matrix()
        return [row[: self.k] for row in R[: self.k]]

    def schur_block(self, t: Sequence) -> list[list[Fraction]]:
        """Exact k x k Schur complement of the reduced matrix at a chart point."""
        P = self.congruence
        R = linalg.matmul(linalg.matmul(P, self.matrix_at(t)), linalg.transpose(P))
        k = self.k
        A11 = [r[:k] for r in R[:k]]
        A12 = [r[k:] for r in R[:k]]
        A22 = [r[k:] for r in R[k:]]
        corr = linalg.matmul(linalg.matmul(A12, linalg.inverse(A22)), linalg.transpose(A12))
        return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(A11, corr)]

    def center_fiber_size(self) -> int:
        """Number of points of the fibre over [v] (over C): Z with M(0)Z = 0, ZZ^t = M^c(0)."""
        adj = linalg.adjugate(self.matrix_at((0,) * 5))
        if all(x == 0 for row in adj for x in row):
            return 1
        # rank-one adjugate c * kappa kappa^t with c != 0: Z = +-sqrt(c) kappa
        return 2

    def cramer_residual(self, t: Sequence, z: Sequence) -> list[list[Fraction]]:
        """det M * I - [(M Z) Z^t - M (Z Z^t - M^c)] evaluated from the emitted generators."""
        pt = [Q(x) for x in t] + [Q(x) for x in z]
        mz = [g(pt) for g in self.mz]
        zzv = [g(pt) for g in self.zz]
        G = [[Fraction(0)] * 10 for _ in range(10)]
        n = 0
        for i in range(10):
            for j in range(i, 10):
                G[i][j] = G[j][i] = zzv[n]
                n += 1
        Mt = self.matrix_at(pt[:5])
        d = linalg.det(Mt)
        MG = linalg.matmul(Mt, G)
        return [
            [(d if i == j else 0) - (mz[i] * pt[5 + j] - MG[i][j]) for j in range(10)]
            for i in range(10)
        ]

    def to_json(self) -> dict:
        return {
            "v": [format_rational(x) for x in self.v],
            "hyperplane_basis": [[format_rational(x) for x in u] for u in self.hyperplane],
            "k": self.k,
            "M": [[p.to_json("m") for p in row] for row in self.M],
            "M0": [[p.to_json("m") for p in row] for row in self.M0],
            "congruence": [[format_rational(x) for x in r] for r in self.congruence],
        }


def _hyperplane_candidates(v, seed: int = CHART_SEED, n_random: int = 20):
    for i in range(DIM):
        phi = [Fraction(int(j == i)) for j in range(DIM)]
        yield phi
    for j in range(n_random):
        yield random_vector(task_rng(seed, "hyperplane", j), bound=2)


def local_model(A: LagrangianSubspace, v: Sequence, hyperplane: Sequence | None = None) -> ChartModel:
    """Local chart model of the double cover near [v] in U_B, B = wedge^3 V0.

    ``hyperplane`` is a covector phi with V0 = ker(phi); by default the first
    coordinate (then seeded) hyperplane with phi(v) != 0 and wedge^3 V0
    transverse to A is used.
    """
    v = [Q(x) for x in v]
    k = intersection_dim(A, v)
    if k < 1:
        raise ValueError("[v] is not on Y_A")
    cands = [list(map(Q, hyperplane))] if hyperplane is not None else _hyperplane_candidates(v)
    for phi in cands:
        if linalg.dot(phi, v) == 0:
            continue
        V0 = linalg.nullspace([phi], DIM)
        B = wedge3_rows(V0)
        if transverse(A.rows, B):
            break
    else:
        raise TransversalityError("no hyperplane V0 with [v] in U_B and wedge^3 V0 transverse to A")
    Ar = A.rows
    Bs = dual_basis(Ar, B)

    def T(point):
        return graph_matrix([list(r) for r in annihilator_F(point).basis], Ar, B, Bs)

    M0 = T(v)
    Ms = [linalg.to_matrix(T([a + b for a, b in zip(v, u)])) for u in V0]
    Ms = [[[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(Mk, M0)] for Mk in Ms]

    def affine(t):
        return [[M0[i][j] + sum((t[k_] * Ms[k_][i][j] for k_ in range(5)), Fraction(0)) for j in range(10)]
                for i in range(10)]

    for t in ((1, 1, 1, 1, 1), (2, 0, -1, 0, 3)):
        pt = [a + sum(tk * u[c] for tk, u in zip(t, V0)) for c, a in enumerate(v)]
        if T(pt) != affine(t):
            raise AssertionError("tau is not affine-linear on the chart")

    Mpoly = [[Poly.linear([Ms[k_][i][j] for k_ in range(5)], M0[i][j]) for j in range(10)] for i in range(10)]

    kernel = linalg.nullspace(M0, 10)
    assert len(kernel) == k
    J = []
    span = [list(r) for r in kernel]
    for i in range(10):
        unit = [Fraction(int(c == i)) for c in range(10)]
        if linalg.rank(span + [unit]) > len(span):
            span.append(unit)
            J.append(unit)
    gram_J = linalg.matmul(linalg.matmul(J, M0), linalg.transpose(J))
    PJ, diag = linalg.symmetric_diagonalize(gram_J)
    congruence = kernel + linalg.matmul(PJ, J)
    return ChartModel(A, tuple(v), tuple(tuple(u) for u in V0), k, Mpoly, congruence, diag)


# ---------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class DeltaWitness:
    A: LagrangianSubspace
    point: tuple[Fraction, ...]
    k: int


@dataclass(frozen=True)
class SigmaWitness:
    A: LagrangianSubspace
    W: tuple[tuple[Fraction, ...], ...]


def _random_subspace_of_F(rng, w, dim: int) -> list[list[Fraction]]:
    F = [list(r) for r in annihilator_F(w).basis]
    while True:
        rows = [linalg.matvec(linalg.transpose(F), [Fraction(rng.randint(-2, 2)) for _ in range(10)]) for _ in range(dim)]
        if linalg.rank(rows) == dim:
            return rows


def delta_witness(seed: int, index: int = 0, max_tries: int = 50) -> DeltaWitness:
    """A Lagrangian with a certified point of Y_A[3]: complete a 3-dim S ⊂ F_w."""
    for attempt in range(max_tries):
        rng = task_rng(seed, "delta", index, attempt)
        w = random_vector(rng)
        S = _random_subspace_of_F(rng, w, 3)
        A = complete_to_lagrangian(S)
        k = intersection_dim(A, w)
        if k == 3:
            return DeltaWitness(A, tuple(w), k)
    raise RuntimeError("could not build a Delta witness with k = 3")


def sigma_witness(seed: int, index: int = 0) -> SigmaWitness:
    """A Lagrangian containing wedge^3 W for a random 3-plane W."""
    attempt = 0
    while True:
        rng = task_rng(seed, "sigma", index, attempt)
        W = [random_vector(rng) for _ in range(3)]
        if linalg.rank(W) == 3:
            A = complete_to_lagrangian(wedge3_rows(W)[:1])
            if contains_wedge3(A, W):
                return SigmaWitness(A, tuple(tuple(w) for w in W))
        attempt += 1


def k2_example(seed: int, index: int = 0, decomposable: bool = True):
    """(A, v) with dim(A ∩ F_v) = 2 at v, with or without a decomposable element."""
    attempt = 0
    while True:
        rng = task_rng(seed, "k2", index, decomposable, attempt)
        attempt += 1
        w = random_vector(rng)
        if decomposable:
            # v ^ v1 ^ v2 plus a random second vector of F_v
            others = []
            while linalg.rank([w] + others) < 3:
                others = [random_vector(rng), random_vector(rng)]
            x = wedge3_rows([w] + others)[0]
            S = [x] + _random_subspace_of_F(rng, w, 1)
        else:
            S = _random_subspace_of_F(rng, w, 2)
        if linalg.rank(S) != 2:
            continue
        A = complete_to_lagrangian(S)
        if intersection_dim(A, w) == 2:
            return A, tuple(w)


@dataclass(frozen=True)
class GenericityReport:
    label: str
    sampled_points: int
    max_k: int
    decomposable_found: bool

    HEURISTIC_NOTE = "heuristic: sampling cannot certify membership in LG minus Sigma minus Delta"


def apparent_genericity(A: LagrangianSubspace, seed: int, samples: int = 20) -> GenericityReport:
    """Label A 'apparently_generic' if sampled points show no k >= 3 and no
    decomposable element in any computed A ∩ F_v.  Explicitly heuristic."""
    max_k = 0
    decomp = False
    for j in range(samples):
        v = random_vector(task_rng(seed, "genericity", j))
        cls = classify_point(A, v)
        max_k = max(max_k, cls.k)
        decomp = decomp or cls.decomposable_over_C
    label = "apparently_generic" if max_k < 3 and not decomp else "special"
    return GenericityReport(label, samples, max_k, decomp)
