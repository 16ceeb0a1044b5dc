from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkepw import linalg
from hkepw.exterior import MultiVector, annihilator_F
from hkepw.seeding import random_gl, random_symmetric, random_vector, task_rng
from hkepw.symplag import (
    DEFAULT_A0,
    DEFAULT_B0,
    LagrangianSubspace,
    TransversalityError,
    complete_to_lagrangian,
    contains_decomposable,
    graph_lagrangian,
    graph_matrix,
    intersection_dim,
    is_lagrangian,
    tau,
)

seeds = st.integers(0, 10_000)


@given(seeds)
def test_graph_of_symmetric_is_lagrangian_and_round_trips(seed):
    Q = random_symmetric(task_rng(seed))
    A = graph_lagrangian(Q)
    assert is_lagrangian(A.rows)
    assert graph_matrix(A.rows, DEFAULT_A0, DEFAULT_B0) == Q


def test_graph_of_zero_is_reference():
    A = graph_lagrangian([[0] * 10 for _ in range(10)])
    assert A == LagrangianSubspace.from_rows(DEFAULT_A0)


@given(seeds)
def test_non_symmetric_graph_is_not_isotropic(seed):
    rng = task_rng(seed)
    Q = random_symmetric(rng)
    Q[0][1] += 1
    with pytest.raises(ValueError):
        graph_lagrangian(Q)


def test_lagrangian_check_reports_failure():
    rows = [MultiVector.basis_vector(0, 1, 2).coords(), MultiVector.basis_vector(3, 4, 5).coords()]
    check = is_lagrangian(rows)
    assert not check
    assert check.failing_pair is not None or check.rank != 10


@given(seeds)
def test_tau_corank_equals_intersection_dim(seed):
    rng = task_rng(seed)
    w = random_vector(rng)
    A = complete_to_lagrangian(annihilator_F(w).basis[: rng.randint(0, 3)])
    v = w if rng.random() < 0.5 else random_vector(rng)
    B = LagrangianSubspace.from_rows(DEFAULT_B0)
    try:
        T = tau(A, B, v)
    except TransversalityError:
        return
    assert T.corank() == intersection_dim(A, v)
    assert linalg.is_symmetric(T.entries)


def test_complete_empty_and_partial():
    assert complete_to_lagrangian([]) == LagrangianSubspace.from_rows(annihilator_F([1, 0, 0, 0, 0, 0]).basis)
    F = annihilator_F([1, 0, 0, 0, 0, 0]).basis
    S = [F[0], F[3], F[7]]
    A = complete_to_lagrangian(S)
    assert all(A.contains(s) for s in S)
    assert intersection_dim(A, [1, 0, 0, 0, 0, 0]) == 3


@given(seeds)
def test_complete_contains_isotropic_input(seed):
    rng = task_rng(seed)
    w = random_vector(rng)
    F = annihilator_F(w).basis
    S = [linalg.matvec(linalg.transpose(F), [Fraction(rng.randint(-2, 2)) for _ in range(10)]) for _ in range(2)]
    A = complete_to_lagrangian(S)
    assert all(A.contains(s) for s in S)


def test_complete_rejects_non_isotropic():
    with pytest.raises(ValueError):
        complete_to_lagrangian([MultiVector.basis_vector(0, 1, 2).coords(), MultiVector.basis_vector(3, 4, 5).coords()])


@given(seeds)
def test_transform_preserves_lagrangian_and_intersection(seed):
    rng = task_rng(seed)
    A = graph_lagrangian(random_symmetric(rng))
    g = random_gl(rng)
    v = random_vector(rng)
    gA = A.transform(g)
    assert intersection_dim(gA, linalg.matvec(g, v)) == intersection_dim(A, v)


def test_json_round_trip():
    A = graph_lagrangian(random_symmetric(task_rng(3)))
    assert LagrangianSubspace.from_json(A.to_json()) == A


def test_decomposable_membership():
    A = complete_to_lagrangian([MultiVector.basis_vector(0, 1, 2).coords()])
    assert contains_decomposable(A, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
