import itertools
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from helpers import complexes
from zkwedge.scomplex import construct, skeleton
from zkwedge.zhomology import (boundary_matrix, cohomology_dims, faces_by_dim, rank_over_field,
                               reduced_homology, smith_normal_form)

RP2 = construct(6, [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                    [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-10, 10), min_size=c, max_size=c), min_size=r, max_size=r)))


def gcd_of_minors(A, k):
    g = 0
    rows, cols = len(A), len(A[0])
    for R in itertools.combinations(range(rows), k):
        for C in itertools.combinations(range(cols), k):
            g = gcd(g, int(sympy.Matrix([[A[i][j] for j in C] for i in R]).det()))
    return g


class TestSnf:
    def test_two_by_two(self):
        r = smith_normal_form([[2, 4], [6, 8]])
        assert r.diagonal == (2, 4)
        assert r.diagonal[0] == 2 and r.diagonal[0] * r.diagonal[1] == abs(2 * 8 - 4 * 6)

    def test_identity(self):
        assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)

    def test_zero(self):
        r = smith_normal_form([[0, 0], [0, 0]])
        assert r.diagonal == () and r.rank == 0

    def test_empty(self):
        assert smith_normal_form([]).rank == 0

    @given(matrices)
    def test_divisibility_and_rank(self, A):
        r = smith_normal_form(A)
        d = r.diagonal
        assert all(x > 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        assert r.rank == sympy.Matrix(A).rank()

    @given(matrices)
    def test_against_sympy(self, A):
        ref = [abs(int(x)) for x in invariant_factors(sympy.Matrix(A), domain=ZZ) if x != 0]
        assert list(smith_normal_form(A).diagonal) == ref

    @given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
    def test_gcd_of_minors(self, A):
        r = smith_normal_form(A)
        prod = 1
        for k, dk in enumerate(r.diagonal, start=1):
            prod *= dk
            assert prod == gcd_of_minors(A, k)

    @given(matrices)
    def test_transforms(self, A):
        r = smith_normal_form(A, transforms=True)
        P, Q = sympy.Matrix(r.P), sympy.Matrix(r.Q)
        D = P * sympy.Matrix(A) * Q
        assert abs(P.det()) == 1 and abs(Q.det()) == 1
        for i in range(D.rows):
            for j in range(D.cols):
                want = r.diagonal[i] if i == j and i < r.rank else 0
                assert D[i, j] == want

    @given(matrices)
    def test_rank_over_q(self, A):
        assert rank_over_field(A) == sympy.Matrix(A).rank()


class TestHomology:
    def test_circle(self):
        H = reduced_homology(skeleton(3, 2))
        assert H.betti == {1: 1} and H.torsion_free

    def test_two_points(self):
        assert reduced_homology(construct(2, [[1], [2]])).betti == {0: 1}

    def test_projective_plane(self):
        H = reduced_homology(RP2)
        assert H.betti == {}
        assert H.torsion == {1: (2,)}

    def test_empty_complex(self):
        assert reduced_homology(construct(0, [])).betti == {-1: 1}
        assert reduced_homology(construct(3, [])).betti == {-1: 1}

    def test_simplex(self):
        assert reduced_homology(skeleton(4, 4)).betti == {}

    def test_sphere(self):
        assert reduced_homology(skeleton(4, 3)).betti == {2: 1}

    @given(complexes(max_n=6))
    def test_boundary_squares_to_zero(self, K):
        by = faces_by_dim(K.face_set())
        for d in range(1, max(by) + 1):
            A = sympy.Matrix(boundary_matrix(by[d - 1], by[d])) if by.get(d) else None
            if d + 1 in by and A is not None:
                B = sympy.Matrix(boundary_matrix(by[d], by[d + 1]))
                assert (A * B).is_zero_matrix

    @given(complexes(max_n=6))
    def test_euler(self, K):
        H = reduced_homology(K)
        chi = sum((-1) ** (len(f) - 1) for f in K.face_set())
        assert chi == H.euler()

    @given(complexes(max_n=6))
    def test_rational_betti_by_rank(self, K):
        # independent rank computation with sympy
        by = faces_by_dim(K.face_set())
        ranks = {}
        for d in range(0, max(by) + 1):
            if by.get(d) and by.get(d - 1):
                ranks[d] = sympy.Matrix(boundary_matrix(by[d - 1], by[d])).rank()
        H = reduced_homology(K)
        for d in range(-1, max(by) + 1):
            b = len(by.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
            assert H.rank(d) == b


class TestFieldDims:
    def test_circle_q(self):
        assert cohomology_dims(skeleton(3, 2)) == {1: 1}

    def test_projective_plane_f2(self):
        assert cohomology_dims(RP2, 2) == {1: 1, 2: 1}
        assert cohomology_dims(RP2, 3) == {}
        assert cohomology_dims(RP2) == {}

    def test_simplex(self):
        assert cohomology_dims(skeleton(3, 3)) == {}

    def test_non_prime(self):
        with pytest.raises(ValueError):
            cohomology_dims(RP2, 4)

    def test_f2_by_rank(self):
        # dimension of H^d over F_2 from ranks mod 2 of the coboundaries
        by = faces_by_dim(RP2.face_set())
        r = {d: rank_over_field(boundary_matrix(by[d - 1], by[d]), 2) for d in range(0, 3)}
        dims = {d: len(by[d]) - r.get(d, 0) - r.get(d + 1, 0) for d in range(-1, 3)}
        assert {d: v for d, v in dims.items() if v} == cohomology_dims(RP2, 2)

    @given(complexes(max_n=6), st.sampled_from([2, 3, 5]))
    def test_q_never_exceeds_fp(self, K, p):
        q, fp = cohomology_dims(K), cohomology_dims(K, p)
        assert all(fp.get(d, 0) >= v for d, v in q.items())
