"""Operations on family elements: complexes with a certified sphere decomposition after t suspensions.

W always describes Z_K itself (virtual sphere data); t records how many
suspensions the certificate needs before the wedge decomposition is an honest
homotopy equivalence.  Gluing along a face and disjoint union keep t (max of
the inputs); join raises it by one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .decomposer import decompose
from .errors import ComplexError, NotShiftedError
from .scomplex import SimplicialComplex, glue_layout, is_shifted, join_layout, relabel, SEARCH_CAP
from .wedge import (SphereWedge, SymbolicWedge, half_smash_left, half_smash_right, torus_join_torus,
                    combine_wedge)


@dataclass(frozen=True)
class FamilyElement:
    t: int
    K: SimplicialComplex
    W: Union[SymbolicWedge, SphereWedge]

    def spheres(self) -> SphereWedge:
        return self.W.realize(1) if isinstance(self.W, SymbolicWedge) else self.W

    def poincare(self):
        return self.spheres().poincare()

    def t0_plausible(self, betti=None) -> bool:
        """Oracle check of the cohomological necessary condition for t = 0.

        True when Z_K is torsion-free and its Poincare polynomial matches W.
        This does not prove that Z_K is an unsuspended wedge.
        """
        from .hochster import zk_profile
        prof = zk_profile(self.K, betti=betti)
        return prof.torsion_free and prof.poincare == self.poincare()


def element(K: SimplicialComplex, search: bool = True) -> FamilyElement:
    """t = 0 element for a shifted complex (relabeled by search when needed)."""
    if is_shifted(K, "given").shifted:
        return FamilyElement(0, K, decompose(K))
    if search and K.n <= SEARCH_CAP:
        v = is_shifted(K, "search")
        if v.shifted:
            fwd = {old: new for old, new in zip(v.order, K.ground)}
            back = {new: old for old, new in fwd.items()}
            W = decompose(relabel(K, fwd, K.ground))
            return FamilyElement(0, K, W.relabel(back))
    raise NotShiftedError("no shifted order; cannot build a t = 0 element")


def _spheres_join_torus(n1, n2) -> SphereWedge:
    return torus_join_torus(range(1, n1 + 1), range(n1 + 1, n1 + n2 + 1)).realize(1)


def _spheres_half_smash(W: SphereWedge, k: int) -> SphereWedge:
    # W half-smash a k-torus: W v (one copy of W shifted by |U| for each nonempty U)
    from math import comb
    c = Counter(W.counts())
    for d, m in W.counts().items():
        for u in range(1, k + 1):
            c[d + u] += m * comb(k, u)
    return SphereWedge(dict(c))


def op_glue(e1: FamilyElement, e2: FamilyElement, face1=(), face2=()) -> FamilyElement:
    """Glue e1.K and e2.K along face1 ~ face2 (identified in increasing vertex order)."""
    lay = glue_layout(e1.K, e2.K, face1, face2)
    JM, JN = lay.only1, lay.only2
    t = max(e1.t, e2.t)
    if isinstance(e1.W, SymbolicWedge) and isinstance(e2.W, SymbolicWedge):
        W1 = e1.W.relabel(lay.map1)
        W2 = e2.W.relabel(lay.map2)
        W = torus_join_torus(JM, JN) + half_smash_left(JM, W2) + half_smash_right(W1, JN)
    else:
        W = (torus_join_torus(JM, JN).realize(1) + _spheres_half_smash(e2.spheres(), len(JM))
             + _spheres_half_smash(e1.spheres(), len(JN)))
    return FamilyElement(t, lay.complex, W)


def op_disjoint_union(e1: FamilyElement, e2: FamilyElement) -> FamilyElement:
    return op_glue(e1, e2)


def op_join(e1: FamilyElement, e2: FamilyElement) -> FamilyElement:
    """Z of a join is the product; its suspension splits as W1 v W2 v (W1 ^ W2)."""
    lay = join_layout(e1.K, e2.K)
    t = max(e1.t, e2.t) + 1
    if isinstance(e1.W, SymbolicWedge) and isinstance(e2.W, SymbolicWedge):
        W1 = e1.W.relabel(lay.map1)
        W2 = e2.W.relabel(lay.map2)
        W = W1 + W2 + combine_wedge("smash", W1, W2)
    else:
        a, b = e1.spheres(), e2.spheres()
        c = Counter(a.counts()) + Counter(b.counts())
        for d1, m1 in a.counts().items():
            for d2, m2 in b.counts().items():
                c[d1 + d2] += m1 * m2
        W = SphereWedge(dict(c))
    return FamilyElement(t, lay.complex, W)
