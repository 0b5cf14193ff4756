from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestquot.linalg import (QMatrix, Subspace, kernel_basis, rank,
                             restrict_map, solve, subspace_intersection,
                             subspace_sum)

from oracles import naive_nullspace, naive_rank

F = Fraction

st_scalar = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def st_matrix(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st_scalar, min_size=r * c, max_size=r * c))
    return QMatrix(r, c, entries)


def test_rank_identity():
    assert rank(QMatrix.identity(3)) == 3


def test_rank_zero_matrix():
    assert rank(QMatrix.zeros(2, 2)) == 0


def test_rank_proportional_rows():
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_of_identity_is_zero():
    assert kernel_basis(QMatrix.identity(4)).dim == 0


def test_kernel_of_difference_functional():
    ker = kernel_basis(QMatrix.from_rows([[1, -1]]))
    assert ker.dim == 1
    assert ker.contains((1, 1))


def test_kernel_proportional_rows_contains_expected_vector():
    ker = kernel_basis(QMatrix.from_rows([[1, 2], [2, 4]]))
    assert ker.dim == 1
    assert ker.contains((2, -1))


def test_solve_identity():
    assert solve(QMatrix.identity(2), (F(3), F(-5))) == (F(3), F(-5))


def test_solve_underdetermined():
    x = solve(QMatrix.from_rows([[1, 1]]), (2,))
    assert x is not None and x[0] + x[1] == 2


def test_solve_inconsistent_returns_none():
    assert solve(QMatrix.from_rows([[0]]), (1,)) is None


def test_subspace_intersection_of_equal_spaces():
    A = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    assert subspace_intersection(A, A).equals(A)


def test_complementary_coordinate_lines():
    A = Subspace(2, [(1, 0)])
    B = Subspace(2, [(0, 1)])
    assert subspace_intersection(A, B).dim == 0
    assert subspace_sum(A, B).dim == 2


def test_restrict_map_of_identity_is_inclusion():
    A = Subspace(3, [(1, 0, 0), (0, 0, 1)])
    M = restrict_map(QMatrix.identity(3), A)
    assert M == QMatrix.from_rows([[1, 0], [0, 0], [0, 1]])


def test_restrict_map_rejects_mismatched_ambient():
    with pytest.raises(ValueError):
        restrict_map(QMatrix.identity(2), Subspace(3, [(1, 0, 0)]))


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        Subspace(2, [(1, 1), (2, 2)])


@settings(max_examples=120, deadline=None)
@given(st_matrix())
def test_rank_nullity(M):
    assert rank(M) + kernel_basis(M).dim == M.cols


@settings(max_examples=120, deadline=None)
@given(st_matrix())
def test_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


@settings(max_examples=120, deadline=None)
@given(st_matrix())
def test_kernel_vectors_are_exact(M):
    for v in kernel_basis(M).basis:
        assert M.apply(v) == tuple([F(0)] * M.rows)


@settings(max_examples=100, deadline=None)
@given(st_matrix())
def test_rank_matches_naive_oracle(M):
    assert rank(M) == naive_rank(M.row_list())


@settings(max_examples=60, deadline=None)
@given(st_matrix())
def test_kernel_dim_matches_naive_oracle(M):
    assert kernel_basis(M).dim == len(naive_nullspace(M.row_list()))


@settings(max_examples=80, deadline=None)
@given(st_matrix(max_dim=4), st.data())
def test_solve_solves(M, data):
    x = [data.draw(st_scalar) for _ in range(M.cols)]
    b = M.apply(x)
    got = solve(M, b)
    assert got is not None
    assert M.apply(got) == b


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_grassmann_identity(data):
    n = data.draw(st.integers(1, 4))
    vecs = st.lists(st.lists(st_scalar, min_size=n, max_size=n), min_size=0, max_size=4)
    A = Subspace.from_spanning(n, data.draw(vecs))
    B = Subspace.from_spanning(n, data.draw(vecs))
    inter = subspace_intersection(A, B)
    total = subspace_sum(A, B)
    assert A.dim + B.dim == inter.dim + total.dim
