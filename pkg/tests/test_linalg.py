from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdual.linalg import SparseMatrix, bareiss_rank, rank, rank_kernel, solve_unique, sparse_rank, _integer_rows


def naive_rank(rows):
    """Plain Gaussian elimination over Fraction; the oracle."""
    M = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c] / M[r][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def test_rank_examples():
    assert rank_kernel(SparseMatrix.zero(3, 3)) == (0, 3)
    assert rank_kernel(SparseMatrix.from_dense([[1, 2], [2, 4]])) == (1, 1)
    eye = SparseMatrix(4, 4, {(i, i): 1 for i in range(4)})
    assert rank_kernel(eye) == (4, 0)


def test_no_explicit_zeros_and_bounds():
    M = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(1, 3)})
    assert M.entries == {(1, 1): Fraction(1, 3)}
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})


entry = st.one_of(st.just(Fraction(0)), st.fractions(min_value=-6, max_value=6, max_denominator=5))


@st.composite
def matrices(draw, max_dim=8):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    # low-rank structure is common in the complexes; mix in products of thin factors
    if draw(st.booleans()):
        k = draw(st.integers(1, min(r, c)))
        A = [[draw(entry) for _ in range(k)] for _ in range(r)]
        B = [[draw(entry) for _ in range(c)] for _ in range(k)]
        return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_matches_naive_oracle(rows):
    M = SparseMatrix.from_dense(rows)
    expected = naive_rank(rows)
    assert rank(M) == expected
    assert rank(M, dense_threshold=0) == expected  # sparse path
    assert rank(M, dense_threshold=100) == expected  # dense path
    assert rank_kernel(M) == (expected, len(rows[0]) - expected)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_of_transpose(rows):
    M = SparseMatrix.from_dense(rows)
    assert rank(M) == rank(M.transpose())


def test_integer_rows_clear_denominators():
    M = SparseMatrix.from_dense([[Fraction(1, 2), Fraction(1, 3)], [1, Fraction(2, 3)]])
    rows = _integer_rows(M)
    assert all(isinstance(v, int) for r in rows for v in r.values())
    assert bareiss_rank([[r.get(j, 0) for j in range(2)] for r in rows]) == 1
    assert sparse_rank(rows) == 1


def test_solve_unique():
    A = [[1, 1], [1, -1]]
    assert solve_unique(A, [3, 1]) == [2, 1]
    assert solve_unique([[1, 1], [2, 2]], [1, 2]) is None  # not unique
    assert solve_unique([[1, 1], [2, 2]], [1, 3]) is None  # inconsistent


def test_matmul():
    A = SparseMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert (A @ B).to_dense() == [[1, 0], [0, 1]]
