from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seshadri.lattice import (
    determinant,
    hermite_normal_form,
    identity_matrix,
    invert_unimodular,
    kernel_lattice,
    kernel_splitting,
    matmul,
    matvec,
    primitive_part,
    quotient_projection,
    smith_normal_form,
    xgcd,
)

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.integers(min_value=1, max_value=4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=m, max_size=m),
            min_size=n, max_size=n,
        )
    )
).map(lambda rows: tuple(tuple(r) for r in rows))


def is_hnf_shape(H):
    pivots = []
    last = -1
    for row in H:
        nz = next((j for j, x in enumerate(row) if x != 0), None)
        if nz is None:
            pivots.append(None)
            continue
        if pivots and pivots[-1] is None:
            return False  # zero row above a nonzero row
        if nz <= last:
            return False
        if row[nz] <= 0:
            return False
        last = nz
        pivots.append(nz)
    for i, col in enumerate(pivots):
        if col is None:
            continue
        p = H[i][col]
        for k in range(i):
            if not 0 <= H[k][col] < p:
                return False
    return True


def minor_gcd_invariant_factors(A):
    """Independent oracle: d_1...d_r from gcds of k x k minors."""
    from itertools import combinations

    rows, cols = len(A), len(A[0])
    factors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[A[i][j] for j in ci] for i in ri]
                g = gcd(g, abs(determinant(sub)))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


class TestPrimitivePart:
    def test_already_primitive(self):
        assert primitive_part((-2, -1)) == (-2, -1)

    def test_divides_by_gcd(self):
        assert primitive_part((4, 6)) == (2, 3)

    def test_axis(self):
        assert primitive_part((0, 0, 5)) == (0, 0, 1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError, match="zero vector"):
            primitive_part((0, 0))


class TestHermite:
    def test_identity(self):
        I = identity_matrix(3)
        H, U = hermite_normal_form(I)
        assert H == I and U == I

    def test_small_example(self):
        A = ((2, 4), (0, 3))
        H, U = hermite_normal_form(A)
        assert matmul(U, A) == H
        assert abs(determinant(U)) == 1
        assert is_hnf_shape(H)

    def test_zero_matrix(self):
        A = ((0, 0), (0, 0))
        H, U = hermite_normal_form(A)
        assert H == A
        assert U == identity_matrix(2)

    @settings(max_examples=80, deadline=None)
    @given(small_matrices)
    def test_invariants(self, A):
        H, U = hermite_normal_form(A)
        assert matmul(U, A) == H
        assert abs(determinant(U)) == 1
        assert is_hnf_shape(H)


class TestSmith:
    def test_identity_diag(self):
        A = ((1, 0), (0, 1))
        S, U, V = smith_normal_form(A)
        assert S == A

    def test_diag_2_3(self):
        A = ((2, 0), (0, 3))
        S, U, V = smith_normal_form(A)
        assert S == ((1, 0), (0, 6))
        assert matmul(matmul(U, A), V) == S

    def test_2x2(self):
        A = ((2, 4), (6, 8))
        S, U, V = smith_normal_form(A)
        assert matmul(matmul(U, A), V) == S
        d = [S[0][0], S[1][1]]
        assert d[1] % d[0] == 0
        assert d == minor_gcd_invariant_factors(A)

    @settings(max_examples=80, deadline=None)
    @given(small_matrices)
    def test_invariants(self, A):
        S, U, V = smith_normal_form(A)
        assert matmul(matmul(U, A), V) == S
        assert abs(determinant(U)) == 1
        assert abs(determinant(V)) == 1
        diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
        for i in range(len(S)):
            for j in range(len(S[0])):
                if i != j:
                    assert S[i][j] == 0
        nonzero = [d for d in diag if d != 0]
        assert all(d > 0 for d in nonzero)
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        assert diag[:len(minor_gcd_invariant_factors(A))] == minor_gcd_invariant_factors(A)


class TestQuotientProjection:
    def test_diagonal_line_in_z2(self):
        q = quotient_projection([(-1, 1)], 2)
        assert q.target_rank == 1
        assert q.matrix in (((1, 1),), ((-1, -1),))
        q.validate()
        # Images of the cubic-surface triangle span lattice length 3.
        images = [q.apply(v)[0] for v in [(1, 0), (0, 1), (-1, -1)]]
        assert max(images) - min(images) == 3

    def test_empty_generators(self):
        q = quotient_projection([], 2)
        assert q.matrix == identity_matrix(2)
        assert q.kernel_basis == ()
        q.validate()

    def test_coordinate_quotient(self):
        q = quotient_projection([(1, 0, 0), (0, 1, 0)], 3)
        assert q.matrix == ((0, 0, 1),)
        q.validate()

    def test_kernel_annihilated(self):
        q = quotient_projection([(2, 4, 6), (1, 1, 1)], 3)
        q.validate()
        for k in q.kernel_basis:
            assert all(x == 0 for x in q.apply(k))


class TestKernelSplitting:
    def test_axis(self):
        basis, section = kernel_splitting((0, 1))
        assert basis == ((1, 0),)
        assert section == (0, 1)

    def test_diagonal(self):
        basis, section = kernel_splitting((1, 1))
        assert basis == ((1, -1),)
        assert sum(a * b for a, b in zip((1, 1), section)) == 1

    def test_2_3(self):
        basis, section = kernel_splitting((2, 3))
        assert basis == ((3, -2),)
        assert section == (-1, 1)

    def test_non_primitive_rejected(self):
        with pytest.raises(ValueError, match="primitive"):
            kernel_splitting((2, 4))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(min_value=-7, max_value=7), min_size=2, max_size=4))
    def test_splitting_is_unimodular(self, w):
        g = 0
        for x in w:
            g = gcd(g, x)
        if g != 1:
            return
        w = tuple(w)
        basis, section = kernel_splitting(w)
        assert len(basis) == len(w) - 1
        for b in basis:
            assert sum(a * x for a, x in zip(w, b)) == 0
        assert sum(a * x for a, x in zip(w, section)) == 1
        stacked = basis + (section,)
        assert abs(determinant(stacked)) == 1


class TestHelpers:
    def test_xgcd(self):
        for a, b in [(2, 3), (0, 1), (-2, -1), (12, 18)]:
            g, x, y = xgcd(a, b)
            assert g == gcd(a, b)
            assert a * x + b * y == g

    def test_invert_unimodular(self):
        U = ((1, 2), (0, 1))
        assert matmul(U, invert_unimodular(U)) == identity_matrix(2)
        with pytest.raises(ValueError):
            invert_unimodular(((2, 0), (0, 1)))

    def test_kernel_lattice_saturated(self):
        basis = kernel_lattice([(2, 4)], 2)
        assert basis == ((2, -1),)
