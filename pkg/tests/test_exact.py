from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert.errors import SingularPivot
from latcert.exact import (
    det,
    hnf,
    identity,
    int_kernel,
    mat_mul,
    rat_ldlt,
    signature_of_gram,
    snf,
    snf_invariants,
    transpose,
)


def int_matrices(max_dim=6, max_entry=50):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            )
        )
    )


def is_unimodular(U):
    return det(U) in (1, -1)


def test_hnf_permutation():
    H, U = hnf([[0, 1], [1, 0]])
    assert H == [[1, 0], [0, 1]]
    assert is_unimodular(U)


def test_hnf_already_reduced():
    H, _ = hnf([[2, 4], [0, 6]])
    assert H == [[2, 4], [0, 6]]


def test_hnf_gcd_column():
    H, U = hnf([[2, 0], [3, 0]])
    assert H == [[1, 0], [0, 0]]
    assert mat_mul(U, [[2, 0], [3, 0]]) == H


@given(int_matrices())
@settings(max_examples=150)
def test_hnf_identity_holds(M):
    H, U = hnf(M)
    assert mat_mul(U, M) == H
    assert is_unimodular(U)
    # echelon shape: pivot columns strictly increase
    pivots = [next((j for j, x in enumerate(row) if x != 0), None) for row in H]
    nz = [p for p in pivots if p is not None]
    assert nz == sorted(nz) and len(set(nz)) == len(nz)
    for i, p in enumerate(pivots):
        if p is None:
            continue
        assert H[i][p] > 0
        for k in range(i):
            assert 0 <= H[k][p] < H[i][p]


def test_snf_diag_kept():
    S, _, _ = snf([[2, 0], [0, 4]])
    assert S == [[2, 0], [0, 4]]


def test_snf_unimodular_input():
    S, _, _ = snf([[0, 1], [1, 0]])
    assert S == [[1, 0], [0, 1]]


def test_snf_a3_gram():
    A3 = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    assert snf_invariants(A3) == [1, 1, 4]


@given(int_matrices())
@settings(max_examples=150)
def test_snf_identity_and_chain(M):
    S, U, V = snf(M)
    assert mat_mul(mat_mul(U, M), V) == S
    assert is_unimodular(U) and is_unimodular(V)
    d = snf_invariants(M)
    assert all(x > 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert b % a == 0
    # off-diagonal zero
    for i, row in enumerate(S):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


@given(int_matrices(max_dim=5, max_entry=20))
@settings(max_examples=100)
def test_snf_det_product(M):
    n = len(M)
    if n != len(M[0]):
        return
    d = det(M)
    invs = snf_invariants(M)
    if d != 0:
        prod = 1
        for x in invs:
            prod *= x
        assert prod == abs(d)


def test_int_kernel_trivial():
    assert int_kernel(identity(2)) == []


def test_int_kernel_zero():
    assert int_kernel([[0, 0], [0, 0]]) == [[1, 0], [0, 1]]


def test_int_kernel_line():
    # kernel of x - y = 0 read as x @ [[1], [-1]] = 0
    assert int_kernel([[1], [-1]]) == [[1, 1]]


@given(int_matrices(max_dim=5, max_entry=10))
@settings(max_examples=100)
def test_int_kernel_is_kernel_and_saturated(M):
    K = int_kernel(M)
    for row in K:
        assert all(x == 0 for x in mat_mul([row], M)[0])
    if K:
        # saturated: invariant factors of the basis are all 1
        assert snf_invariants(K) == [1] * len(K)


def test_ldlt_diagonal():
    L, D = rat_ldlt([[2, 0], [0, 2]])
    assert L == [[1, 0], [0, 1]]
    assert D[0][0] == 2 and D[1][1] == 2


def test_ldlt_one_step():
    L, D = rat_ldlt([[2, 1], [1, 2]])
    assert L[1][0] == Fraction(1, 2)
    assert D[0][0] == 2 and D[1][1] == Fraction(3, 2)


def test_ldlt_singular_pivot():
    with pytest.raises(SingularPivot):
        rat_ldlt([[0, 1], [1, 0]])


@given(int_matrices(max_dim=5, max_entry=8))
@settings(max_examples=100)
def test_ldlt_reconstructs(M):
    n = len(M)
    if n != len(M[0]):
        return
    G = mat_mul(M, transpose(M))  # symmetric PSD
    try:
        L, D = rat_ldlt(G)
    except SingularPivot:
        return
    assert mat_mul(mat_mul(L, D), transpose(L)) == [
        [Fraction(x) for x in row] for row in G
    ]
    signs = signature_of_gram(G)
    dd = [D[i][i] for i in range(n)]
    assert signs[0] == sum(1 for x in dd if x > 0)
    assert signs[1] == sum(1 for x in dd if x < 0)


def test_signature_hyperbolic():
    assert signature_of_gram([[0, 1], [1, 0]]) == (1, 1, 0)
