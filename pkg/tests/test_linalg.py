from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hkepw import intmat, linalg

small = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def square(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_rational_wire_format():
    assert linalg.format_rational(3) == "3/1"
    assert linalg.format_rational(Fraction(-4, 6)) == "-2/3"
    assert linalg.parse_rational("-2/3") == Fraction(-2, 3)
    with pytest.raises(ValueError):
        linalg.parse_rational("0.5")
    with pytest.raises(TypeError):
        linalg.Q(0.5)


@given(matrices())
def test_rank_and_kernel_match_sympy(M):
    S = sympy.Matrix(M)
    assert linalg.rank(M) == S.rank()
    K = linalg.nullspace(M, len(M[0]))
    assert len(K) == len(M[0]) - S.rank()
    for k in K:
        assert all(x == 0 for x in linalg.matvec(M, k))


@given(square())
def test_det_matches_sympy(M):
    assert linalg.det(M) == sympy.Matrix(M).det()


@given(square(8))
def test_adjugate_identity(M):
    adj = linalg.adjugate(M)
    d = linalg.det(M)
    prod = linalg.matmul(M, adj)
    assert prod == [[d if i == j else 0 for j in range(len(M))] for i in range(len(M))]
    if len(M) <= 5:
        assert adj == [[Fraction(int(x)) for x in row] for row in sympy.Matrix(M).adjugate().tolist()]


@given(square(5))
def test_symmetric_diagonalize(M):
    G = [[M[i][j] + M[j][i] for j in range(len(M))] for i in range(len(M))]
    P, d = linalg.symmetric_diagonalize(G)
    D = linalg.matmul(linalg.matmul(P, G), linalg.transpose(P))
    assert D == [[d[i] if i == j else 0 for j in range(len(G))] for i in range(len(G))]
    assert linalg.det(P) != 0


def test_inverse_singular_raises():
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


@given(matrices(4, 6))
def test_integer_kernel_is_saturated_basis(M):
    n = len(M[0])
    K = intmat.integer_kernel(M, n)
    assert len(K) == n - sympy.Matrix(M).rank()
    for k in K:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in M)
    if K:
        assert intmat.is_saturated(K)


@given(matrices(4, 5))
def test_smith_invariants_match_sympy(M):
    from sympy.matrices.normalforms import smith_normal_form

    S = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    expected = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i])
    assert sorted(intmat.smith_invariants(M)) == expected


def test_hnf_rows_shape():
    H = intmat.hnf_rows([[2, 4, 6], [1, 1, 1], [3, 5, 7]])
    assert H == [[1, 1, 1], [0, 2, 4]]
    assert not intmat.is_saturated([[2, 0], [0, 1]])
