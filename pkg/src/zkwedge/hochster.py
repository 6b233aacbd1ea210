"""Cohomology of the moment-angle complex from full subcomplexes.

H~^d(Z_K) is the direct sum over vertex subsets sigma of H~^{d-|sigma|-1}(K_sigma).
This module evaluates that sum exactly, including integral torsion, and is
used as the independent check for the decomposer.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import SizeLimitError
from .scomplex import SimplicialComplex
from .series import IntPolynomial
from .zhomology import homology_of_faces

ORACLE_CAP = 20


@dataclass(frozen=True)
class BigradedBetti:
    """Ranks keyed by (sigma, d) with d the degree in Z_K; ``torsion`` keyed the same way.

    The torsion entry at (sigma, d) lists the invariant factors of the
    integral torsion of H^{d-|sigma|-1}(K_sigma), which comes from homology
    one degree lower.  The unit class from sigma = () is left out.
    """
    n: int
    entries: dict
    torsion: dict = field(default_factory=dict)

    @property
    def torsion_flags(self) -> set:
        return set(self.torsion)

    def rank(self, sigma, d: int) -> int:
        return self.entries.get((tuple(sorted(sigma)), d), 0)

    def by_degree(self) -> dict:
        out = {}
        for (_, d), r in self.entries.items():
            out[d] = out.get(d, 0) + r
        return dict(sorted(out.items()))

    def poincare(self) -> IntPolynomial:
        return IntPolynomial.from_dict(self.by_degree())

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    def rows(self) -> list:
        """Sorted (sigma, d, rank, torsion) rows for every nonzero entry or torsion flag."""
        keys = sorted(set(self.entries) | set(self.torsion), key=lambda k: (len(k[0]), k[0], k[1]))
        return [(s, d, self.entries.get((s, d), 0), self.torsion.get((s, d), ())) for s, d in keys]


def _masks(K: SimplicialComplex):
    pos = {v: i for i, v in enumerate(K.ground)}
    return [(sum(1 << pos[v] for v in f), f) for f in K.face_set()]


def _chunk_task(args):
    ground, face_masks, sigma_masks = args
    out = []
    for sm in sigma_masks:
        sub = [f for m, f in face_masks if m & ~sm == 0]
        sigma = tuple(v for i, v in enumerate(ground) if sm >> i & 1)
        H = homology_of_faces(sub)
        for deg, b in H.betti.items():
            # cohomology in degree deg has rank b
            out.append(("rank", sigma, deg + len(sigma) + 1, b))
        for deg, t in H.torsion.items():
            # torsion of H_deg sits in H^{deg+1}
            out.append(("tors", sigma, deg + 1 + len(sigma) + 1, t))
    return out


def bigraded_betti(K: SimplicialComplex, workers: Optional[int] = None, chunk: int = 64) -> BigradedBetti:
    """Ranks and torsion of H~*(Z_K) split over full subcomplexes.

    ``workers`` > 1 spreads the subsets over processes; results are merged by
    key order, so output does not depend on scheduling.
    """
    n = K.n
    if n > ORACLE_CAP:
        raise SizeLimitError(f"oracle limited to n <= {ORACLE_CAP}, got n = {n}")
    fm = _masks(K)
    sigmas = list(range(1, 1 << n))
    chunks = [(K.ground, fm, sigmas[i:i + chunk]) for i in range(0, len(sigmas), chunk)]
    if workers and workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_chunk_task, chunks))
    else:
        parts = [_chunk_task(c) for c in chunks]
    entries, torsion = {}, {}
    for part in parts:
        for kind, sigma, d, val in part:
            if kind == "rank":
                entries[(sigma, d)] = val
            else:
                torsion[(sigma, d)] = val
    key = lambda kv: (kv[0][0], kv[0][1])
    return BigradedBetti(n, dict(sorted(entries.items(), key=key)), dict(sorted(torsion.items(), key=key)))


@dataclass(frozen=True)
class ZkProfile:
    """Reduced Poincare polynomial, torsion flag and a sphere-count candidate.

    The candidate is a necessary condition only: matching cohomology does not
    make Z_K a wedge of spheres.
    """
    poincare: IntPolynomial
    torsion_free: bool
    sphere_candidate: Optional[object]
    note: str = "necessary condition only"


def zk_profile(K: SimplicialComplex, workers: Optional[int] = None, betti: Optional[BigradedBetti] = None) -> ZkProfile:
    from .wedge import SphereWedge
    B = betti if betti is not None else bigraded_betti(K, workers)
    P = B.poincare()
    cand = SphereWedge.from_poincare(P) if B.torsion_free else None
    return ZkProfile(P, B.torsion_free, cand)


def subsets_in_order(ground):
    """All subsets of ``ground`` by size then lex; used to recompute totals independently."""
    for r in range(len(ground) + 1):
        yield from itertools.combinations(ground, r)
