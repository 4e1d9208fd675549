import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cychom.errors import CompositionNotZero, DimensionMismatch
from cychom.groups import FgAbelianGroup
from cychom.snf import (
    as_integer_matrix,
    cokernel_group,
    exact_matmul,
    homology_of_pair,
    kernel_basis,
    mod_p_homology,
    rank_mod_p,
    smith_normal_form,
    solve_columns,
)
from cychom._kernels import HAVE_NUMBA


def bareiss_det(a):
    """Fraction-free determinant over exact Python ints (oracle)."""
    m = [[int(x) for x in row] for row in np.asarray(a)]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def determinantal_divisors(a):
    """gcd of all k x k minors for each k (oracle for invariant factors)."""
    a = np.asarray(a)
    rows, cols = a.shape
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                minor = bareiss_det(a[np.ix_(ri, ci)])
                g = math.gcd(g, abs(minor))
        out.append(g)
    return out


small_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda r: st.integers(min_value=1, max_value=5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9),
                     min_size=c, max_size=c),
            min_size=r, max_size=r,
        )
    )
)


def check_decomposition(a, dec):
    a = as_integer_matrix(a)
    lhs = exact_matmul(exact_matmul(dec.u, a), dec.v)
    assert np.array_equal(np.asarray(lhs, dtype=object),
                          np.asarray(dec.d, dtype=object))
    assert abs(bareiss_det(dec.u)) == 1
    assert abs(bareiss_det(dec.v)) == 1
    diag = dec.diagonal()
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        if y != 0:
            assert x != 0 and y % x == 0
        # A zero may only be followed by zeros.
        if x == 0:
            assert y == 0


def test_frozen_diagonal_examples():
    dec = smith_normal_form(np.diag([2, 3]))
    assert dec.diagonal() == [1, 6]
    dec = smith_normal_form(np.array([[2, 4], [6, 8]]))
    assert dec.diagonal() == [2, 4]
    check_decomposition(np.array([[2, 4], [6, 8]]), dec)


def test_edge_shapes():
    assert smith_normal_form(np.zeros((0, 0), dtype=np.int64)).rank == 0
    assert smith_normal_form(np.zeros((3, 0), dtype=np.int64)).rank == 0
    assert smith_normal_form(np.zeros((0, 4), dtype=np.int64)).rank == 0
    dec = smith_normal_form(np.zeros((2, 3), dtype=np.int64))
    assert dec.rank == 0 and dec.d.shape == (2, 3)


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_property_uav_equals_d(rows):
    a = np.array(rows, dtype=np.int64)
    check_decomposition(a, smith_normal_form(a))


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_property_invariant_factors_match_determinantal_divisors(rows):
    a = np.array(rows, dtype=np.int64)
    dec = smith_normal_form(a)
    divisors = determinantal_divisors(a)
    diag = dec.diagonal() + [0] * (len(divisors) - dec.rank)
    prod = 1
    for k, g in enumerate(divisors, start=1):
        prod = prod * diag[k - 1]
        assert prod == g, (diag, divisors)
        if g == 0:
            break


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_property_square_det_equals_product_of_factors(rows):
    a = np.array(rows, dtype=np.int64)
    if a.shape[0] != a.shape[1]:
        return
    dec = smith_normal_form(a)
    diag = dec.diagonal() + [0] * (a.shape[0] - dec.rank)
    prod = 1
    for x in diag:
        prod *= x
    assert prod == abs(bareiss_det(a))


def test_backends_agree_when_both_present():
    if not HAVE_NUMBA:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(7)
    for _ in range(25):
        a = rng.integers(-9, 10, size=(6, 6)).astype(np.int64)
        d1 = smith_normal_form(a, backend="numba").diagonal()
        d2 = smith_normal_form(a, backend="numpy").diagonal()
        assert d1 == d2


def test_overflow_guard_restarts_exactly():
    # Entries near 2**31 force intermediate growth past the guard; the
    # object-array restart must still satisfy u a v = d.
    a = np.array(
        [[2**31 - 5, 2**31 - 17], [2**31 - 3, 2**31 - 29]],
        dtype=np.int64,
    )
    dec = smith_normal_form(a)
    check_decomposition(a, dec)
    big = np.array([[10**30, 1], [1, 10**30]], dtype=object)
    dec = smith_normal_form(big)
    check_decomposition(big, dec)


def test_as_integer_matrix_rejects_floats_and_ragged():
    with pytest.raises(TypeError):
        as_integer_matrix(np.array([[1.5]]))
    with pytest.raises((TypeError, ValueError)):
        as_integer_matrix([[1, 2], [3]])


def test_kernel_and_solve_round_trip():
    a = np.array([[1, 2, 3], [2, 4, 6]], dtype=np.int64)
    k = kernel_basis(a)
    assert k.shape[1] == 2
    prod = np.asarray(exact_matmul(a, k), dtype=object)
    assert not prod.any()
    b = np.array([[6], [12]], dtype=np.int64)
    x = solve_columns(a, b)
    assert np.array_equal(np.asarray(exact_matmul(a, x), dtype=object),
                          np.asarray(b, dtype=object))
    with pytest.raises(ValueError):
        solve_columns(np.array([[2]], dtype=np.int64),
                      np.array([[3]], dtype=np.int64))


def test_cokernel_group():
    assert cokernel_group(np.diag([2, 3])) == FgAbelianGroup(0, (6,))
    a = np.zeros((3, 1), dtype=np.int64)
    assert cokernel_group(a) == FgAbelianGroup(3, ())


def test_homology_of_pair_frozen():
    # Z --2--> Z --0--> 0 has homology Z/2 in the middle.
    d_out = np.zeros((0, 1), dtype=np.int64)
    d_in = np.array([[2]], dtype=np.int64)
    assert homology_of_pair(d_in, d_out) == FgAbelianGroup(0, (2,))
    # Zero maps on both sides leave the full free module.
    z = np.zeros((0, 2), dtype=np.int64)
    w = np.zeros((2, 0), dtype=np.int64)
    assert homology_of_pair(w, z) == FgAbelianGroup(2, ())


def test_homology_of_pair_checks_composition():
    d_out = np.array([[1]], dtype=np.int64)
    d_in = np.array([[1]], dtype=np.int64)
    with pytest.raises(CompositionNotZero):
        homology_of_pair(d_in, d_out)
    with pytest.raises(DimensionMismatch):
        homology_of_pair(np.zeros((3, 2), dtype=np.int64),
                         np.zeros((4, 4), dtype=np.int64))


def test_rank_and_homology_mod_p():
    a = np.array([[2, 4], [6, 8]], dtype=np.int64)
    assert rank_mod_p(a, 2) == 0
    assert rank_mod_p(a, 3) == 2
    d_out = np.zeros((0, 2), dtype=np.int64)
    assert mod_p_homology(a, d_out, 2) == 2
    assert mod_p_homology(a, d_out, 3) == 0
    with pytest.raises(ValueError):
        rank_mod_p(a, 4)


@settings(max_examples=40, deadline=None)
@given(small_matrices, st.sampled_from([2, 3, 5]))
def test_property_mod_p_rank_from_invariant_factors(rows, p):
    # rank over F_p = number of invariant factors not divisible by p.
    a = np.array(rows, dtype=np.int64)
    dec = smith_normal_form(a)
    expected = sum(1 for x in dec.invariant_factors() if x % p != 0)
    expected += sum(1 for x in dec.diagonal() if x == 1)
    assert rank_mod_p(a, p) == expected
