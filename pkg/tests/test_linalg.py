import numpy as np
from hypothesis import given, strategies as st

from resurgence.linalg import (
    complete_basis,
    independent_rows,
    inverse_mod_p,
    nullspace_mod_p,
    rank_mod_p,
    row_reduce,
)

P = 101


def matrices(max_rows=6, max_cols=6):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols), st.integers(0, 2**32 - 1)).map(
        lambda t: _sparse_random(*t))


def _sparse_random(rows, cols, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, P, size=(rows, cols))
    A[rng.random((rows, cols)) < 0.4] = 0
    return A


@given(matrices())
def test_rank_nullity(A):
    r = rank_mod_p(A, P)
    N = nullspace_mod_p(A, P)
    assert r + N.shape[0] == A.shape[1]
    assert not (A @ N.T % P).any()


@given(matrices())
def test_rank_agrees_with_rref(A):
    R, pivots = row_reduce(A, P)
    assert rank_mod_p(A, P) == len(pivots) == R.shape[0]
    assert rank_mod_p(A.T, P) == len(pivots)


@given(matrices())
def test_independent_rows_span(A):
    idx = independent_rows(A, P)
    assert len(idx) == rank_mod_p(A, P) == rank_mod_p(A[idx], P)
    assert idx == sorted(idx)


def test_independent_rows_greedy():
    A = np.array([[0, 0], [1, 2], [2, 4], [0, 1]])
    assert independent_rows(A, P) == [1, 3]


def test_inverse_and_completion():
    A = np.array([[2, 1], [1, 1]])
    assert (A @ inverse_mod_p(A, P) % P == np.eye(2)).all()
    B = complete_basis([[0, 1, 1]], P)
    assert B.shape == (3, 3) and rank_mod_p(B, P) == 3
    assert list(B[0]) == [0, 1, 1]


def test_rank_over_small_prime_sees_characteristic():
    # det = 3, singular only mod 3
    A = np.array([[1, 1], [1, 4]])
    assert rank_mod_p(A, 3) == 1
    assert rank_mod_p(A, 5) == 2
