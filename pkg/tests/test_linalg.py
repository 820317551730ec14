"""Exact rational linear algebra against a dense Gauss-Jordan oracle."""

from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from qcactus import linalg


def dense_rref(rows):
    """Textbook Gauss-Jordan with first-nonzero pivoting."""
    M = [[Fraction(x) for x in row] for row in rows]
    nr = len(M)
    nc = len(M[0]) if nr else 0
    r = 0
    piv = []
    for c in range(nc):
        p = next((k for k in range(r, nr) if M[k][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for k in range(nr):
            if k != r and M[k][c] != 0:
                f = M[k][c]
                M[k] = [a - f * b for a, b in zip(M[k], M[r])]
        piv.append(c)
        r += 1
    return M, piv


matrices = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-3, 3).map(lambda v: v if abs(v) < 2 else 0) | st.integers(-4, 4),
                                min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


@given(matrices)
def test_rref_is_the_unique_reduced_form(rows):
    R, piv = linalg.rref(linalg.qmatrix(rows))
    R2, piv2 = dense_rref(rows)
    assert piv == piv2
    assert R.tolist() == R2


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    M = linalg.qmatrix(rows)
    N = linalg.nullspace(M)
    assert linalg.rank(M) + N.shape[1] == M.shape[1]
    assert linalg.is_zero(linalg.matmul(M, N))


@given(matrices)
def test_solve_recovers_coordinates(rows):
    M = linalg.qmatrix(rows)
    B = linalg.column_basis(M)
    X = linalg.solve(B, M)
    assert linalg.matmul(B, X).tolist() == M.tolist()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_agrees_with_float_determinant(rows):
    d = linalg.det(linalg.qmatrix(rows))
    assert abs(float(d) - np.linalg.det(np.array(rows, dtype=float))) < 1e-6
    assert (d == 0) == (linalg.rank(linalg.qmatrix(rows)) < len(rows))


def test_matmul_fast_path_matches_fraction_path():
    A = linalg.qmatrix([[1, 2], [3, 4]])
    B = linalg.qmatrix([[Fraction(1, 2), 0], [0, 1]])
    assert linalg.matmul(A, B).tolist() == A.dot(B).tolist()
    big = linalg.qmatrix([[1 << 40]])
    assert linalg.matmul(big, big)[0, 0] == 1 << 80


def test_kron_and_identity():
    A = linalg.qmatrix([[1, 2], [0, 1]])
    K = linalg.kron(A, linalg.identity(2))
    assert K.shape == (4, 4)
    assert K[0, 2] == 2 and K[1, 3] == 2 and K[0, 3] == 0
