import pytest
from hypothesis import given

from helpers import shifted_complexes
from zkwedge.decomposer import (RegularStep, build_regular_sequence, construction_step, decompose,
                                decompose_labels, decompose_with_trace, disjoint_union_formula, split_theta,
                                star_fibre)
from zkwedge.errors import ComplexError, NonRegularStepError, NotShiftedError
from zkwedge.hochster import bigraded_betti
from zkwedge.scomplex import components, construct, skeleton
from zkwedge.series import IntPolynomial
from zkwedge.wedge import SphereWedge, SymbolicWedge, porter_fibre

T = IntPolynomial([0, 1])


def W(*items):
    return SymbolicWedge([(s, I, 1) for s, I in items])


class TestRegularSequence:
    def test_all_edges(self):
        steps = build_regular_sequence(skeleton(3, 2))
        assert [s.simplex for s in steps] == [(1, 2), (1, 3)]
        assert all(s.phase == "iteration1" for s in steps)

    def test_triangle(self):
        steps = build_regular_sequence(skeleton(3, 3))
        assert [s.simplex for s in steps] == [(1, 2), (1, 3), (2, 3), (1, 2, 3)]
        assert [s.phase for s in steps] == ["iteration1", "iteration1", "iteration2_pre", "iteration2_main"]
        assert steps[2].S == (1,)

    def test_points(self):
        assert build_regular_sequence(skeleton(3, 1)) == []

    def test_rejects_non_shifted(self):
        with pytest.raises(NotShiftedError):
            build_regular_sequence(construct(3, [[1, 3], [2]]))

    def test_rejects_ghosts(self):
        with pytest.raises(ComplexError):
            build_regular_sequence(construct(3, [[1, 2]]))

    @given(shifted_complexes(min_n=2, max_n=7))
    def test_partition(self, K):
        for st in build_regular_sequence(K):
            assert set(st.simplex) | set(st.S) | set(st.T) == set(K.ground)

    @given(shifted_complexes(min_n=2, max_n=7))
    def test_star_fibre_is_link_fibre(self, K):
        # Z of the star is D^2 times Z of the link, so the fibres agree
        F, traces = star_fibre(K)
        L = K.link((1,))
        if not L.ghosts():
            assert F == decompose(L)
        for tr in traces:
            assert tr.D <= tr.F_before


class TestConstructionStep:
    def test_first_example(self):
        tr = construction_step(porter_fibre(3, 2), RegularStep((1, 2), (), (3,), "iteration1"))
        assert tr.C == SymbolicWedge()
        assert tr.D == W((1, (1, 2)), (1, (1, 2, 3)))
        assert tr.F_after == W((1, (1, 3)), (1, (2, 3)), (1, (1, 2, 3)))
        assert tr.F_after.realize(1) == SphereWedge([3, 3, 4])
        assert tr.F_after.poincare() == bigraded_betti(construct(3, [[1, 2], [3]])).poincare()

    def test_second_example(self):
        first = construction_step(porter_fibre(3, 2), RegularStep((1, 2), (), (3,), "iteration1"))
        tr = construction_step(first.F_after, RegularStep((1, 3), (), (2,), "iteration1"))
        assert tr.D == W((1, (1, 3)), (1, (1, 2, 3)))
        assert tr.F_after == W((1, (2, 3)))
        assert tr.F_after.poincare() == bigraded_betti(construct(3, [[1, 2], [1, 3]])).poincare()

    def test_exact_consumption(self):
        step = RegularStep((1, 2), (3,), (), "iteration2_pre")
        F = W((1, (1, 2)))
        tr = construction_step(F, step)
        assert tr.E == SymbolicWedge()
        assert tr.F_after == tr.C.suspend(1) == W((2, (1, 2, 3)))

    def test_non_regular(self):
        with pytest.raises(NonRegularStepError) as e:
            construction_step(SymbolicWedge(), RegularStep((1, 2), (), (3,), "iteration1"))
        assert e.value.step.simplex == (1, 2)

    @given(shifted_complexes(min_n=2, max_n=7))
    def test_poincare_bookkeeping(self, K):
        for tr in star_fibre(K)[1] + decompose_with_trace(K).step_traces():
            lhs = tr.F_after.poincare()
            rhs = T * tr.C.poincare() + tr.F_before.poincare() - tr.D.poincare()
            assert lhs == rhs
            assert all(c >= 0 for c in tr.E.poincare().coeffs)
            assert tr.F_after == tr.C.suspend(1) + (tr.F_before - tr.D)


class TestSplit:
    def test_all_edges(self):
        sp = split_theta(skeleton(3, 2))
        assert sp.retract_part == SymbolicWedge()
        assert sp.trivial_part == W((1, (2, 3)))

    def test_cone(self):
        # rest equals link, so the comparison map is an equivalence
        sp = split_theta(construct(3, [[1, 2], [1, 3]]))
        assert sp.trivial_part == SymbolicWedge()
        assert sp.retract_part == W((1, (2, 3)))

    def test_three_points(self):
        sp = split_theta(skeleton(3, 1))
        assert sp.trivial_part == SymbolicWedge()
        assert sp.retract_part == W((1, (2, 3)))

    @given(shifted_complexes(min_n=2, max_n=7))
    def test_partition_of_link_fibre(self, K):
        if len(components(K)) > 1:
            return
        sp = split_theta(K)
        assert sp.trivial_part + sp.retract_part == decompose(K.link((1,)))


class TestDecompose:
    def test_three_points(self):
        assert decompose(skeleton(3, 1)).realize(1) == SphereWedge([3, 3, 3, 4, 4])

    def test_all_edges(self):
        assert decompose(skeleton(3, 2)) == W((2, (1, 2, 3)))

    def test_simplex(self):
        assert decompose(skeleton(4, 4)) == SymbolicWedge()

    def test_small_cases(self):
        assert decompose(construct(1, [[1]])) == SymbolicWedge()
        assert decompose(construct(0, [])) == SymbolicWedge()

    def test_errors(self):
        with pytest.raises(NotShiftedError):
            decompose(construct(4, [[1, 2], [2, 3], [3, 4], [1, 4]]))
        with pytest.raises(ComplexError):
            decompose(construct(3, [[1, 2]]))

    def test_non_standard_labels(self):
        from zkwedge.scomplex import from_faces
        K = from_faces((4, 7, 9), [(4, 7), (9,)])
        assert decompose(K) == W((1, (4, 9)), (1, (7, 9)), (1, (4, 7, 9)))

    @given(shifted_complexes(max_n=7))
    def test_oracle_equivalence(self, K):
        D = decompose(K)
        B = bigraded_betti(K)
        assert {(I, s + len(I)): m for s, I, m in D.items()} == B.entries
        assert B.torsion_free

    @given(shifted_complexes(max_n=7))
    def test_summand_shape(self, K):
        assert all(s >= 1 and len(I) >= 2 for s, I, _ in decompose(K).items())

    @given(shifted_complexes(max_n=7))
    def test_labels_are_valid(self, K):
        fs = K.face_set()
        for J, F in decompose_labels(K):
            j0 = J[0]
            assert F and set(F) <= set(J) and j0 not in F
            assert F in fs and tuple(sorted(F + (j0,))) not in fs

    @given(shifted_complexes(max_n=7))
    def test_disconnected_agrees_with_union_formula(self, K):
        comps = components(K)
        if len(comps) < 2:
            return
        V1 = comps[0]
        V2 = tuple(v for v in K.ground if v not in V1)
        W1 = decompose(K.full(V1))
        W2 = decompose(K.full(V2))
        assert decompose(K) == disjoint_union_formula(W1, V1, W2, V2)

    @given(shifted_complexes(max_n=6))
    def test_deterministic_trace(self, K):
        a, b = decompose_with_trace(K), decompose_with_trace(K)
        assert a.wedge == b.wedge == decompose(K)
        assert [(t.step, t.F_after) for t in a.step_traces()] == [(t.step, t.F_after) for t in b.step_traces()]

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 9) for k in range(1, n)])
    def test_skeleton_matches_porter(self, n, k):
        assert decompose(skeleton(n, n - k)).realize(1) == porter_fibre(n, k).realize(1)
