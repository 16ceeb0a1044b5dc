from fractions import Fraction

import pytest

from hkepw import epw, linalg
from hkepw.exterior import MultiVector, annihilator_F, interior, wedge_all
from hkepw.poly import Poly
from hkepw.seeding import random_gl, random_symmetric, random_vector, task_rng
from hkepw.symplag import (
    DEFAULT_B0,
    LagrangianSubspace,
    complete_to_lagrangian,
    graph_lagrangian,
    intersection_dim,
)

E0 = [1, 0, 0, 0, 0, 0]


def graph(seed):
    return graph_lagrangian(random_symmetric(task_rng(seed, "graph")))


@pytest.fixture(scope="module")
def A():
    return graph(11)


@pytest.fixture(scope="module")
def S(A):
    return epw.sextic(A)


def test_chart_data_default_split_round_trip(A):
    cd = epw.chart_data(A)
    assert cd.chart.label == "coordinate e0"
    assert [list(r) for r in cd.q_A] == random_symmetric(task_rng(11, "graph"))


def test_chart_data_falls_back():
    # e1^e2^e3 lies in wedge^3 span(e1..e5), so the e0 chart is not transverse
    A = complete_to_lagrangian([MultiVector.basis_vector(1, 2, 3).coords()])
    assert not epw.chart_is_transverse(A, epw.coordinate_chart(0))
    cd = epw.chart_data(A)
    assert cd.chart.label != "coordinate e0"
    assert linalg.is_symmetric(cd.q_A)


def test_chart_data_exhausted():
    # wedge^3 W for a hyperplane W meets every wedge^3 V0
    B = LagrangianSubspace.from_rows(DEFAULT_B0)
    with pytest.raises(epw.ChartError, match="no transverse coordinate chart found after 26 trials"):
        epw.chart_data(B)


def test_pluecker_quadric_examples():
    V0 = [[int(i == j) for j in range(6)] for i in range(1, 6)]
    assert epw.pluecker_quadric(E0, V0, [0] * 6) == [[0] * 10 for _ in range(10)]
    q = epw.pluecker_quadric(E0, V0, [0, 1, 0, 0, 0, 0])
    # lex basis of wedge^2 V0: u_a ^ u_b with u_k = e_{k+1}; e2^e3 is (1,2) -> 4, e4^e5 is (3,4) -> 9
    assert abs(q[4][9]) == 1
    assert all(q[i][i] == 0 for i in range(10))
    assert linalg.is_symmetric(q)
    v, w = [0, 1, 2, 0, -1, 3], [0, 0, 1, 1, 0, -2]
    qv, qw = epw.pluecker_quadric(E0, V0, v), epw.pluecker_quadric(E0, V0, w)
    assert epw.pluecker_quadric(E0, V0, [a + b for a, b in zip(v, w)]) == [
        [a + b for a, b in zip(r, s)] for r, s in zip(qv, qw)
    ]
    with pytest.raises(ValueError):
        epw.pluecker_quadric(E0, V0, E0)


def test_sextic_is_degree_six(S):
    assert not S.whole_space
    assert S.poly.degree() == 6 and S.poly.is_homogeneous()
    first = S.poly.sorted_terms()[0][1]
    assert first > 0
    assert all(c.denominator == 1 for c in S.poly.terms.values())


def test_degree_ten_determinant_is_x0_4_times_sextic(A):
    cd = epw.chart_data(A)
    cs = epw.chart_sextic(A, cd.chart)
    rng = task_rng(1)
    for _ in range(20):
        x = random_vector(rng, bound=5)
        assert cd.determinant(x) == Fraction(x[0]) ** 4 * cs.homogeneous(x)


def test_zero_locus_agreement(A, S):
    rng = task_rng(2)
    pts = [random_vector(rng) for _ in range(40)]
    pts += [[0] + random_vector(rng, n=5) for _ in range(20)]
    # points of Y_A: w with A built to meet F_w
    for p in pts:
        assert (S(p) == 0) == (intersection_dim(A, p) >= 1)


def test_constructed_point_lies_on_sextic():
    rng = task_rng(5)
    w = random_vector(rng)
    F = annihilator_F(w).basis
    x = linalg.matvec(linalg.transpose(F), [Fraction(rng.randint(-2, 2)) for _ in range(10)])
    A = complete_to_lagrangian([x])
    assert epw.sextic(A)(w) == 0
    assert intersection_dim(A, w) >= 1


def test_chart_independence(A, S):
    other = epw.sextic_via_chart(A, epw.coordinate_chart(4))
    assert other == S


def test_equivariance(A, S):
    g = random_gl(task_rng(7))
    assert epw.pullback(epw.sextic(A.transform(g)), g) == S


def test_whole_space_flag():
    F = LagrangianSubspace.from_rows(annihilator_F([0, 0, 0, 1, 0, 0]).basis)
    form = epw.sextic(F)
    assert form.whole_space and form.degree == -1


def test_sextic_json_round_trip(S):
    assert epw.SexticForm.from_json(S.to_json()) == S
    coeffs = S.to_json()["coeffs"]
    assert [tuple(c["m"]) for c in coeffs] == sorted((tuple(c["m"]) for c in coeffs), reverse=True)


def test_stratify_examples(A):
    assert epw.stratify_point(A, random_vector(task_rng(3))).k == 0
    F = LagrangianSubspace.from_rows(annihilator_F(E0).basis)
    assert epw.stratify_point(F, E0).k == 10
    d = epw.delta_witness(7)
    rep = epw.stratify_point(d.A, d.point)
    assert rep.k == 3 and rep.stratum == "Y_A[3]"
    with pytest.raises(ValueError):
        epw.stratify_point(A, [0] * 6)


def test_contains_wedge3_examples(A):
    W = [[int(i == j) for j in range(6)] for i in range(3)]
    B = complete_to_lagrangian([MultiVector.basis_vector(0, 1, 2).coords()])
    assert epw.contains_wedge3(B, W)
    assert not epw.contains_wedge3(A, W)
    W2 = [[1, 1, 0, 0, 0, 0], [0, 2, 1, 0, 0, 0], [1, 0, 3, 0, 0, 0]]
    assert epw.contains_wedge3(B, W2)
    with pytest.raises(ValueError):
        epw.contains_wedge3(B, W[:2])


def _generic_F_element(w, seed):
    rng = task_rng(seed)
    F = annihilator_F(w).basis
    return linalg.matvec(linalg.transpose(F), [Fraction(rng.randint(-3, 3)) for _ in range(10)])


def test_classification_table():
    A = complete_to_lagrangian([MultiVector.basis_vector(0, 1, 2).coords(), _generic_F_element(E0, 1)])
    cls = epw.classify_point(A, E0)
    assert cls.k == 2 and cls.label == "surface_A1"
    # witness is decomposable: v ^ eta with eta ^ eta = 0 mod v
    wit = cls.decomposable_witness
    assert A.contains(wit.coords())
    eta = interior(E0, wit)
    assert wedge_all(MultiVector.vector(E0), eta, eta).is_zero()

    A2 = complete_to_lagrangian([_generic_F_element(E0, 2), _generic_F_element(E0, 3)])
    assert epw.classify_point(A2, E0).label == "fixed_smooth"

    A1 = complete_to_lagrangian([_generic_F_element(E0, 4)])
    assert epw.classify_point(A1, E0).label == "etale_double"
    assert epw.classify_point(A1, [0, 1, 2, 0, 0, 1]).label == "off_sextic"
    d = epw.delta_witness(1)
    assert epw.classify_point(d.A, d.point).label == "deep"


def test_decomposable_pencil_irrational_root():
    e = MultiVector.basis_vector
    # eta = s (e12 + e34) + t (e13 + 2 e24): eta ^ eta = (2 s^2 - 4 t^2) e1234, roots s/t = +-sqrt(2)
    w1 = e(0, 1, 2) + e(0, 3, 4)
    w2 = e(0, 1, 3) + e(0, 2, 4) * 2
    exists, wit = epw.decomposable_in_pencil(E0, w1, w2)
    assert exists and wit is None


def test_decomposable_pencil_rational_root():
    e = MultiVector.basis_vector
    # eta ^ eta = (2 s^2 - 8 t^2) e1234, roots s/t = +-2
    w1 = e(0, 1, 2) + e(0, 3, 4)
    w2 = e(0, 1, 3) + e(0, 2, 4) * 4
    exists, wit = epw.decomposable_in_pencil(E0, w1, w2)
    assert exists
    eta = interior(E0, wit)
    assert wedge_all(MultiVector.vector(E0), eta, eta).is_zero()


def test_decomposable_pencil_none():
    e = MultiVector.basis_vector
    # eta ^ eta = 2 s^2 e1234 + 2 t^2 e1235 ... no common root
    w1 = e(0, 1, 2) + e(0, 3, 4)
    w2 = e(0, 1, 3) + e(0, 2, 5)
    exists, _ = epw.decomposable_in_pencil(E0, w1, w2)
    assert not exists


@pytest.fixture(scope="module")
def k1_model():
    w = random_vector(task_rng(9, "k1"))
    A = complete_to_lagrangian([_generic_F_element(w, 9)])
    return epw.local_model(A, w)


@pytest.mark.slow
def test_local_model_shapes(k1_model):
    m = k1_model
    assert m.k == 1
    assert len(m.mz) == 10 and len(m.zz) == 55
    assert all(p.nvars == 15 for p in m.generators())
    assert all(m.M[i][j] == m.M[j][i] for i in range(10) for j in range(10))
    assert all(p.degree() <= 1 for row in m.M for p in row)
    M0 = m.matrix_at([0] * 5)
    assert 10 - linalg.rank(M0) == 1
    assert len(m.M0) == 1 and m.M0[0][0].degree() == 1
    assert m.center_fiber_size() == 2


@pytest.mark.slow
def test_local_model_cramer(k1_model):
    rng = task_rng(10)
    for _ in range(20):
        t = [rng.randint(-3, 3) for _ in range(5)]
        z = [rng.randint(-3, 3) for _ in range(10)]
        assert all(x == 0 for row in k1_model.cramer_residual(t, z) for x in row)


@pytest.mark.slow
def test_local_model_reduced_block(k1_model):
    m = k1_model
    R = m.reduced_matrix()
    R0 = [[p((0,) * 5) for p in row] for row in R]
    assert R0 == [[0 if i < m.k or j < m.k or i != j else m.diagonal[i - m.k] for j in range(10)] for i in range(10)]
    # first-order agreement of the Schur complement with M0 at small points
    t = [Fraction(1, 10**6), 0, 0, 0, 0]
    s = m.schur_block(t)[0][0]
    lin = m.M0[0][0](t)
    assert abs(s - lin) < abs(lin) * Fraction(1, 1000)


def test_local_model_rejects_off_sextic(A):
    with pytest.raises(ValueError):
        epw.local_model(A, random_vector(task_rng(3)))


def test_witness_soundness():
    for i in range(3):
        d = epw.delta_witness(5, i)
        assert intersection_dim(d.A, d.point) == 3
        s = epw.sigma_witness(5, i)
        assert epw.contains_wedge3(s.A, s.W)


def test_genericity_label_is_heuristic():
    rep = epw.apparent_genericity(graph(1), seed=0, samples=5)
    assert rep.label in ("apparently_generic", "special")
    assert "heuristic" in rep.HEURISTIC_NOTE
    d = epw.delta_witness(1)
    assert intersection_dim(d.A, d.point) == 3
