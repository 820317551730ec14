"""Arithmetic in Z[q, q^-1] and Laurent matrices."""

from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcactus.laurent import (
    LaurentInt,
    LaurentMatrix,
    RatFunc,
    laurent_det,
    laurent_gcd,
    laurent_kernel,
    qpow,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    scalar_ratio,
)

laurents = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentInt)


def naive_evaluate(p: LaurentInt, x):
    from fractions import Fraction

    return sum(c * Fraction(x) ** e for e, c in p.coeffs.items())


def test_quantum_integers():
    assert quantum_integer(2) == LaurentInt({1: 1, -1: 1})
    assert quantum_integer(0) == LaurentInt(0)
    assert quantum_factorial(0) == LaurentInt(1)
    three = LaurentInt({2: 1, 0: 1, -2: 1})
    assert quantum_factorial(3) == three * quantum_integer(2)


@pytest.mark.parametrize("n", range(7))
def test_binomials_specialise_and_are_palindromic(n):
    for k in range(n + 1):
        b = quantum_binomial(n, k)
        assert b.at_one() == comb(n, k)
        assert b.bar() == b
        if 0 < k < n:
            # q-Pascal rule
            rhs = qpow(k) * quantum_binomial(n - 1, k) + qpow(k - n) * quantum_binomial(n - 1, k - 1)
            assert b == rhs


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentInt(0)


@given(laurents, laurents)
def test_evaluation_is_a_homomorphism(a, b):
    for x in (2, -3):
        assert naive_evaluate(a * b, x) == naive_evaluate(a, x) * naive_evaluate(b, x)
        assert naive_evaluate(a + b, x) == naive_evaluate(a, x) + naive_evaluate(b, x)


@given(laurents, laurents.filter(lambda p: not p.is_zero()))
def test_exact_division(a, b):
    assert (a * b).divexact(b) == a
    assert b.divides(a * b)


@given(laurents, laurents, laurents.filter(lambda p: not p.is_zero()))
def test_gcd_divides_both(a, b, c):
    g = laurent_gcd(a * c, b * c)
    assert g.divides(a * c) and g.divides(b * c)
    assert c.divides(g)


def test_units_and_bar():
    assert qpow(3, -1).is_unit()
    assert not quantum_integer(2).is_unit()
    assert qpow(2).bar() == qpow(-2)


def test_ratfunc_reduction():
    two = quantum_integer(2)
    r = RatFunc(two * qpow(1), two)
    assert r.is_laurent() and r.as_laurent() == qpow(1)
    assert RatFunc(qpow(-1, -1)).signed_monomial() == (-1, -1)


laurent_mats = st.integers(1, 3).flatmap(
    lambda n: st.lists(laurents, min_size=n * n, max_size=n * n).map(
        lambda xs: [xs[r * n:(r + 1) * n] for r in range(n)]))


def grid_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), LaurentInt(0)) for j in range(p)] for i in range(n)]


@given(laurent_mats, laurent_mats)
def test_matrix_product_matches_entrywise(a, b):
    if len(a) != len(b):
        return
    A, B = LaurentMatrix.from_grid(a), LaurentMatrix.from_grid(b)
    assert (A @ B).to_grid() == grid_mul(a, b)
    assert (A @ B).at_one().tolist() == [[x.at_one() for x in row] for row in grid_mul(a, b)]


@given(laurent_mats)
def test_determinant_matches_leibniz(a):
    from itertools import permutations

    n = len(a)
    total = LaurentInt(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = LaurentInt(sign)
        for i in range(n):
            term = term * a[i][p[i]]
        total = total + term
    assert laurent_det(a) == total


def test_kernel_vectors_are_annihilated():
    two = quantum_integer(2)
    rows = [[LaurentInt(1), two, qpow(1)], [qpow(-1), qpow(-1) * two, LaurentInt(1)]]
    ker = laurent_kernel(rows)
    assert len(ker) == 2
    for v in ker:
        for row in rows:
            assert sum((x * y for x, y in zip(row, v)), LaurentInt(0)) == LaurentInt(0)


def test_scalar_ratio():
    m = LaurentMatrix.from_grid([[LaurentInt(1), qpow(2)], [LaurentInt(0), quantum_integer(2)]])
    r = scalar_ratio(m.scale(qpow(-3, -1)), m)
    assert r.signed_monomial() == (-1, -3)
    assert scalar_ratio(LaurentMatrix.zeros(2, 2), LaurentMatrix.zeros(2, 2)) is None
    other = LaurentMatrix.identity(2)
    assert scalar_ratio(m, other) is None


def test_shift_and_bar_on_matrices():
    m = LaurentMatrix.from_grid([[qpow(1), LaurentInt(2)]])
    assert m.shift(2).to_grid() == [[qpow(3), LaurentInt({2: 2})]]
    assert m.bar().to_grid() == [[qpow(-1), LaurentInt(2)]]
    assert np.array_equal(m.at_one(), np.array([[1, 2]]))
