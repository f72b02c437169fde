"""Exact linear algebra: SNF, solving, kernels, ranks."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpmackey import linalg as la
from cpmackey.rings import GroundRing
from oracles import det, exhaustive_solution, minors_gcd

Z = GroundRing.integers()


def matrices(max_dim=4, box=6):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-box, box), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices())
def test_snf_postconditions(rows):
    M = la.mat(rows)
    D, U, V, Ui = la.smith_normal_form(M, with_inverse=True)
    assert la.equal(U @ M @ V, D)
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    assert la.equal(U @ Ui, la.identity(U.shape[0]))
    diag = [D[i, i] for i in range(min(D.shape))]
    for i in range(D.shape[0]):
        for j in range(D.shape[1]):
            if i != j:
                assert D[i, j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@given(matrices(max_dim=3, box=5))
def test_snf_diagonal_matches_minor_gcds(rows):
    # [DERIVED] the k-th determinantal divisor is the product of the first k invariant factors
    diag = la.snf_diagonal(rows)
    prod = 1
    for k, d in enumerate(diag, start=1):
        prod *= d
        assert prod == minors_gcd(rows, k)


def test_snf_known_example():
    # [DERIVED] hand computation: invariant factors of [[2,4,4],[-6,6,12],[10,-4,-16]] are 2, 6, 12
    assert la.snf_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_snf_empty_and_zero():
    D, U, V = la.smith_normal_form(la.zeros(2, 0))
    assert D.shape == (2, 0) and U.shape == (2, 2) and V.shape == (0, 0)
    assert la.snf_diagonal([[0, 0], [0, 0]]) == [0, 0]


@pytest.mark.parametrize("ring", [Z, GroundRing.field(5), GroundRing.field(7), GroundRing.mod(6)], ids=str)
def test_solve_linear_against_exhaustive_search(ring):
    rnd = random.Random(11)
    for _ in range(200):
        m, n = rnd.randint(1, 3), rnd.randint(1, 3)
        A = [[rnd.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        b = [rnd.randint(-4, 4) for _ in range(m)]
        x = la.solve_linear(A, b, ring)
        brute = exhaustive_solution(A, b, ring.modulus, box=4)
        if ring.kind == "Z" and brute is None and x is not None:
            # a solution outside the search box is still a solution
            assert [sum(a * v for a, v in zip(row, x)) for row in A] == b
            continue
        assert (x is None) == (brute is None)
        if x is not None:
            got = [sum(a * v for a, v in zip(row, x)) for row in A]
            assert all(ring.reduce(g - t) == 0 for g, t in zip(got, b))


def test_solve_linear_shapes():
    x = la.solve_linear([[2, 0], [0, 3]], [4, 9], Z)
    assert x == [2, 3]
    col = la.solve_linear(la.mat([[2, 0], [0, 3]]), la.col([4, 9]), Z)
    assert col.shape == (2, 1)
    assert la.solve_linear([[2]], [3], Z) is None
    assert la.solve_linear([[2]], [3], GroundRing.field(5)) == [4]


@given(matrices(max_dim=5, box=3))
def test_kernel_is_saturated_and_complete(rows):
    A = la.mat(rows)
    K = la.kernel(A, Z)
    assert la.is_zero(A @ K)
    assert K.shape[1] == A.shape[1] - la.rank(A, Z)
    if K.shape[1]:
        # saturated: the invariant factors of the basis are all 1
        assert all(d == 1 for d in la.snf_diagonal(K))


def test_large_kernel_uses_exact_check():
    rnd = random.Random(3)
    A = la.mat([[rnd.randint(-3, 3) for _ in range(16)] for _ in range(9)])
    K = la.kernel(A, Z)
    assert la.is_zero(A @ K) and K.shape[1] == 16 - la.rank(A, Z)


@given(matrices(max_dim=3, box=5))
def test_det_matches_laplace(rows):
    if len(rows) == len(rows[0]):
        assert la.det(rows) == det(rows)


def test_inverse_over_field_and_integers():
    F = GroundRing.field(7)
    A = la.mat([[1, 2], [3, 4]])
    assert la.equal(la.reduce(A @ la.inverse(A, F), F), la.identity(2))
    B = la.mat([[2, 1], [1, 1]])
    assert la.equal(B @ la.inverse(B, Z), la.identity(2))


def test_rref_mod_transform():
    A = la.mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    R, piv, T = la.rref_mod(A, 5)
    assert la.equal(la.reduce(T @ A, GroundRing.field(5)), R)
    assert list(piv) == [0, 1]
