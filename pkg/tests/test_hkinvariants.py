from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkepw import hkinvariants as hk
from hkepw import linalg
from hkepw.hklattice import k3n_lattice
from oracles import matching_sum_by_permutations

LAMBDA = k3n_lattice(2).gram
H = [1, 1] + [0] * 21
small_gram = [[2, 1, 0], [1, -2, 0], [0, 0, -4]]
rat3 = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=3, max_size=3)


def test_matching_counts():
    assert [len(hk.matchings(n)) for n in (1, 2, 3)] == [1, 3, 15]
    assert hk.matchings(2) == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]
    with pytest.raises(ValueError):
        hk.matchings(7)


def test_matching_count_formula():
    from math import factorial

    for n in range(1, 6):
        assert len(hk.matchings(n)) == factorial(2 * n) // (factorial(n) * 2**n)


def test_fujiki_examples():
    assert hk.fujiki_product(LAMBDA, 1, H, H, H, H) == 12
    d = [0] * 22 + [1]
    assert hk.fujiki_product(LAMBDA, 1, H, H, H, d) == 0
    iso = [1, 0] + [0] * 21
    assert hk.fujiki_product(LAMBDA, 1, iso, iso, iso, iso) == 0
    with pytest.raises(ValueError):
        hk.fujiki_product(LAMBDA, 1, H, H, H)


@given(rat3, st.integers(1, 3), st.fractions(min_value=1, max_value=5, max_denominator=3))
def test_fujiki_power_relation(a, n, c):
    assert hk.fujiki_product(small_gram, c, *([a] * (2 * n))) == hk.fujiki_power(small_gram, c, a, n)


@given(rat3, rat3, rat3, rat3)
def test_fujiki_symmetric_and_matches_oracle(a, b, c, d):
    args = [a, b, c, d]
    ref = hk.fujiki_product(small_gram, 1, *args)
    assert ref == matching_sum_by_permutations(small_gram, args)
    for perm in list(permutations(range(4)))[::5]:
        assert hk.fujiki_product(small_gram, 1, *[args[i] for i in perm]) == ref


def test_chi_table():
    assert [hk.chi_k3sq(q) for q in (-8, -2, 0, 2, 6, 8)] == [1, 1, 3, 6, 15, 21]


@given(st.integers(-200, 200))
def test_chi_reflection_and_integrality(q):
    assert hk.chi_k3sq(q) == hk.chi_k3sq(-10 - q)
    if q % 2 == 0:
        assert hk.chi_k3sq(q).denominator == 1


def test_chi_one_exactly_at_minus_two_and_minus_eight():
    assert [q for q in range(-100, 101, 2) if hk.chi_k3sq(q) == 1] == [-8, -2]


def test_salamon_examples():
    assert hk.salamon_check(hk.K3_TABLE).holds
    assert hk.salamon_check(hk.K3_TABLE).lhs == 22
    r = hk.salamon_check(hk.K3_2_TABLE)
    assert r.holds and hk.K3_2_TABLE.b[4] == 46 + 10 * 23 - 0
    bad = hk.salamon_check(hk.BettiTable((1, 0, 23, 0, 275, 0, 23, 0, 1)))
    assert not bad.holds and (bad.lhs, bad.rhs) == (550, 552)
    with pytest.raises(ValueError):
        hk.BettiTable((1, 0, 23, 0, 276, 0, 22, 0, 1))


@given(st.integers(0, 30), st.integers(0, 10))
def test_salamon_rejects_wrong_b4(b2, b3):
    b3 *= 2
    correct = 46 + 10 * b2 - b3
    for b4 in (correct - 1, correct, correct + 2):
        if b4 >= 0:
            t = hk.BettiTable((1, 0, b2, b3, b4, b3, b2, 0, 1))
            assert hk.salamon_check(t).holds == (b4 == correct)


def test_guan_scan():
    feas = hk.guan_scan(40)
    assert max(b2 for b2, _, _ in feas) == 23
    assert [(b3, b4) for b2, b3, b4 in feas if b2 == 23] == [(0, 276)]
    assert all(b2 != 24 for b2, _, _ in feas)
    assert 46 + 240 < 300
    assert hk.guan_summary() == "max b2 = 23 (b3 = 0, b4 = 276)"
    with pytest.raises(ValueError):
        hk.guan_scan(22)


def test_betti_b2_table():
    assert hk.betti_b2("K3^[2]") == hk.betti_b2("K3^[5]") == 23
    assert hk.betti_b2("Kummer^[3]") == 7
    assert hk.betti_b2("OG6") == 8 and hk.betti_b2("OG10") == 24
    with pytest.raises(ValueError):
        hk.betti_b2("Enriques")


def test_sym2_small_model_against_oracle():
    m = hk.sym2_model(small_gram, Fraction(3, 2))
    basis = hk.sym2_basis(3)
    e = [[int(i == j) for j in range(3)] for i in range(3)]
    for a, (i, j) in enumerate(basis):
        for b, (k, l) in enumerate(basis):
            assert m.B[a][b] == Fraction(3, 2) * matching_sum_by_permutations(small_gram, [e[i], e[j], e[k], e[l]])
    # B(u.v, w.z) equals the Fujiki product of u, v, w, z
    u, v, w, z = [1, 2, 0], [0, 1, -1], [3, 0, 1], [1, 1, 1]
    assert m.pair(m.product(u, v), m.product(w, z)) == hk.fujiki_product(small_gram, Fraction(3, 2), u, v, w, z)


def test_q_dual_norm_small():
    r = 3
    m = hk.sym2_model(small_gram, 1)
    assert m.pair(m.q_dual, m.q_dual) == r * r + 2 * r


@pytest.fixture(scope="module")
def big_model():
    return hk.sym2_model(LAMBDA, 1)


@pytest.fixture(scope="module")
def big_decomposition(big_model):
    return hk.decompose_h4(big_model, H)


def test_sym2_big(big_model, big_decomposition):
    assert big_model.dim == 276
    assert big_model.pair(big_model.q_dual, big_model.q_dual) == 575
    assert big_decomposition.dims == (2, 22, 252)


def _orth(model, X, Y):
    BY = [model.pair_vector(y) for y in Y]
    return all(sum(x[j] * v for j, v in by.items()) == 0 for x in X for by in BY)


def test_decomposition_orthogonal(big_model, big_decomposition):
    d = big_decomposition
    assert _orth(big_model, d.level0, d.level2)
    assert _orth(big_model, d.level0, d.level4)
    assert _orth(big_model, d.level2, d.level4)


def test_projection_reassembles(big_model, big_decomposition):
    s = big_model.product([1, 0, 2] + [0] * 20, [0, 1, 0, 1] + [0] * 19)
    p0, p2, p4 = hk.projection(big_model, big_decomposition, s)
    assert [a + b + c for a, b, c in zip(p0, p2, p4)] == s


def test_q_dual_outside_h_times_hperp(big_model, big_decomposition):
    # q_dual lies in C h^2 + Sym^2(h^perp): its level-2 component vanishes
    p0, p2, p4 = hk.projection(big_model, big_decomposition, big_model.q_dual)
    assert not any(p2)


def test_decompose_rejects_isotropic(big_model):
    with pytest.raises(ValueError):
        hk.decompose_h4(big_model, [1, 0] + [0] * 21)
