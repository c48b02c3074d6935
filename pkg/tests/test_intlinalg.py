"""Exact integer linear algebra, cross-checked against sympy."""

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from discdimer.intlinalg import (column_hermite, integer_inverse, is_unimodular,
                                 kernel_basis, lattices_equal, mat_mul,
                                 rational_rank, smith_invariant_factors)

small_matrix = st.integers(-6, 6).flatmap(
    lambda _: st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
        lambda shape: st.lists(
            st.lists(st.integers(-9, 9), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0], max_size=shape[0])))


@given(small_matrix)
@settings(max_examples=150, deadline=None)
def test_column_hermite_factorization(a):
    h, u = column_hermite(a)
    assert mat_mul(a, u) == h
    # u unimodular
    det = sympy.Matrix(u).det()
    assert det in (1, -1)
    assert rational_rank(h) == sympy.Matrix(a).rank()


@given(small_matrix)
@settings(max_examples=150, deadline=None)
def test_kernel_basis_spans_kernel(a):
    basis = kernel_basis(a)
    rows, cols = len(a), len(a[0])
    for v in basis:
        assert all(sum(r[i] * v[i] for i in range(cols)) == 0 for r in a)
    assert len(basis) == cols - sympy.Matrix(a).rank()
    if basis:
        # the basis vectors are independent
        assert rational_rank([list(col) for col in zip(*basis)]) == len(basis)


@given(small_matrix)
@settings(max_examples=100, deadline=None)
def test_smith_factors_match_sympy(a):
    factors = smith_invariant_factors(a)
    m = sympy.Matrix(a)
    snf = smith_normal_form(m)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert factors == diag
    for x, y in zip(factors, factors[1:]):
        assert y % x == 0


def test_smith_handles_unit_heavy_matrix():
    # a matrix whose pivot/entry gcd steps are all trivial; guards against
    # non-terminating elimination orders
    a = [[0, 0, 1], [-1, -1, 0], [0, 1, -1]]
    assert smith_invariant_factors(a) == [1, 1, 1]
    assert is_unimodular(a)


@given(small_matrix)
@settings(max_examples=100, deadline=None)
def test_rational_rank_matches_sympy(a):
    assert rational_rank(a) == sympy.Matrix(a).rank()


def test_integer_inverse_round_trip():
    a = [[2, 1, 0], [1, 1, 0], [3, 5, 1]]
    inv = integer_inverse(a)
    n = len(a)
    assert mat_mul(a, inv) == [[int(i == j) for j in range(n)] for i in range(n)]


def test_integer_inverse_rejects_non_unimodular():
    import pytest
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        integer_inverse([[1, 1], [1, 1]])


def test_lattices_equal():
    assert lattices_equal([[1, 0], [0, 1]], [[1, 1], [0, 1]], 2)
    assert not lattices_equal([[2, 0], [0, 1]], [[1, 0], [0, 1]], 2)
    assert lattices_equal([[2, 0], [0, 2], [1, 1]], [[1, 1], [2, 0]], 2)
