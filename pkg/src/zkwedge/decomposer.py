"""Wedge decomposition of Z_K for shifted K.

The fibre F of Z_K -> prod X_i is built up by adjoining coordinate subspaces
one simplex at a time.  Adjoining simplex I to a partial complex A changes
the fibre by

    F_after = Sigma C  v  (F_before - D)
    C = (Y ^ Omega S) v (Y ^ Omega S ^ Omega T),   D = Y v (Y ^ Omega T),

with Y the summand (|I|-1, I), S the vertices that already cone off the
boundary of I in A and T the remaining vertices.

For the whole complex we recurse on vertex count.  With v0 the first vertex,
L = link(v0) and R = rest on the other vertices, a summand of the link fibre
is either killed along the path of adjunctions from L to R (the part on which
the comparison map is trivial) or survives into the fibre of R (a retract).
Each summand carries a label (J, F): J is its index set, F is a face of the
relevant complex avoiding min J whose cone with min J is missing, and the
suspension count is |F|.  The labels make the provenance bookkeeping exact.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import ComplexError, NonRegularStepError, NotShiftedError
from .scomplex import SimplicialComplex, is_shifted
from .wedge import SymbolicWedge, porter_fibre, torus_join_torus, half_smash_left, half_smash_right


def _subsets(xs, nonempty=False):
    xs = sorted(xs)
    for r in range(1 if nonempty else 0, len(xs) + 1):
        yield from itertools.combinations(xs, r)


def _union(*parts):
    return tuple(sorted(set().union(*parts)))


@dataclass(frozen=True)
class RegularStep:
    """Adjoin ``simplex``; S cones off its boundary in the current complex, T is the rest."""
    simplex: tuple
    S: tuple
    T: tuple
    phase: str

    def __post_init__(self):
        I, S, T = set(self.simplex), set(self.S), set(self.T)
        if I & (S | T) or S & T:
            raise ValueError("I, S, T must be disjoint")


@dataclass(frozen=True)
class StepTrace:
    step: RegularStep
    C: SymbolicWedge
    D: SymbolicWedge
    E: SymbolicWedge
    F_before: SymbolicWedge
    F_after: SymbolicWedge


@dataclass(frozen=True)
class ThetaSplit:
    """trivial_part is the part of the link fibre killed on the way to R, retract_part the rest."""
    trivial_part: SymbolicWedge
    retract_part: SymbolicWedge
    trivial_labels: tuple = ()
    retract_labels: tuple = ()
    steps: tuple = ()


# single steps

def cone_vertices(faces, simplex, candidates) -> tuple:
    """Vertices v outside ``simplex`` with v * boundary(simplex) inside ``faces``."""
    bd = list(itertools.combinations(simplex, len(simplex) - 1))
    out = []
    for v in candidates:
        if v in simplex:
            continue
        if all(_union(g, (v,)) in faces for g in bd):
            out.append(v)
    return tuple(out)


def step_wedges(step: RegularStep):
    """(C, D) for one adjunction."""
    I = tuple(sorted(step.simplex))
    s = len(I) - 1
    D = Counter((s, _union(I, v)) for v in _subsets(step.T))
    C = Counter()
    for u in _subsets(step.S, nonempty=True):
        for v in _subsets(step.T):
            C[(s, _union(I, u, v))] += 1
    return SymbolicWedge._raw(C), SymbolicWedge._raw(D)


def construction_step(F_before: SymbolicWedge, step: RegularStep) -> StepTrace:
    if len(step.simplex) < 2:
        raise ValueError("adjoined simplex needs at least two vertices")
    C, D = step_wedges(step)
    if not D <= F_before:
        raise NonRegularStepError(f"non-regular step: D is not contained in the fibre at {step}", step, F_before)
    E = F_before - D
    return StepTrace(step, C, D, E, F_before, C.suspend(1) + E)


# sequences

def _require_decomposable(K: SimplicialComplex):
    if K.ghosts():
        raise ComplexError(f"ghost vertices {list(K.ghosts())} are not allowed here")
    v = is_shifted(K, "given")
    if not v.shifted:
        sigma, a, b = v.violation
        raise NotShiftedError(f"not shifted in the given order: face {sigma}, vertex {a} cannot be replaced by {b}")


def build_regular_sequence(K: SimplicialComplex) -> list:
    """Adjunction steps taking the wedge of all X_i to the star of the first vertex.

    First the edges (v0, j) in increasing j, then for each simplex of the star
    containing v0 with at least three vertices (by size, then lex) its face
    without v0 followed by the simplex itself.  Faces already present are skipped.
    """
    _require_decomposable(K)
    V = K.ground
    if not V:
        return []
    v0 = V[0]
    fs = K.face_set()
    star = sorted((f for f in fs if v0 in f and len(f) >= 2), key=lambda f: (len(f), f))
    plan = [(f, "iteration1") for f in star if len(f) == 2]
    for f in star:
        if len(f) >= 3:
            plan.append((f[1:], "iteration2_pre"))
            plan.append((f, "iteration2_main"))
    cur = {()} | {(v,) for v in V}
    steps = []
    for sig, phase in plan:
        if sig in cur:
            continue
        S = cone_vertices(cur, sig, V)
        T = tuple(v for v in V if v not in sig and v not in S)
        steps.append(RegularStep(sig, S, T, phase))
        cur.update(_subsets(sig, nonempty=True))
    return steps


def run_sequence(F0: SymbolicWedge, steps) -> list:
    traces = []
    F = F0
    for st in steps:
        tr = construction_step(F, st)
        traces.append(tr)
        F = tr.F_after
    return traces


def star_fibre(K: SimplicialComplex):
    """Fibre for the star of the first vertex, by running the regular sequence; returns (fibre, traces)."""
    steps = build_regular_sequence(K)
    V = K.ground
    F0 = porter_fibre(len(V), len(V) - 1, V) if len(V) >= 2 else SymbolicWedge()
    traces = run_sequence(F0, steps)
    return (traces[-1].F_after if traces else F0), traces


# labeled recursion

@dataclass
class LevelTrace:
    """One node of the recursion.  ``kind`` is base, disjoint or connected."""
    vertices: tuple
    kind: str
    result: SymbolicWedge = None
    link_fibre: Optional[SymbolicWedge] = None
    rest_fibre: Optional[SymbolicWedge] = None
    split: Optional[ThetaSplit] = None
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def _wedge_of(labels) -> SymbolicWedge:
    return SymbolicWedge._raw(Counter((len(F), J) for J, F in labels))


def _components(faces, V):
    parent = {v: v for v in V}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for f in faces:
        for a in f[1:]:
            parent[find(a)] = find(f[0])
    groups = {}
    for v in V:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


def _path(Vp, start_faces, target_faces, FS, want_steps):
    """Adjoin the faces of the target not in the start, tracking labels.

    Returns (killed original labels, surviving labels at the end, step traces).
    """
    cur_faces = set(start_faces)
    cur = set(FS)
    orig = set(FS)
    killed = set()
    F = _wedge_of(cur)
    traces = []
    for sig in sorted(set(target_faces) - set(start_faces), key=lambda f: (len(f), f)):
        if len(sig) < 2:
            raise NonRegularStepError(f"path would adjoin the vertex {sig}", None, F)
        m0 = sig[0]
        S = cone_vertices(cur_faces, sig, Vp)
        T = tuple(v for v in Vp if v not in sig and v not in S)
        step = RegularStep(sig, S, T, "path")
        if any(v > m0 for v in S):
            raise NonRegularStepError(f"cone vertex above the simplex minimum at {step}", step, F)
        for u in _subsets(T):
            lab = (_union(sig, u), sig[1:])
            if lab not in cur:
                raise NonRegularStepError(f"non-regular step: missing summand {lab} at {step}", step, F)
            cur.remove(lab)
            if lab in orig:
                killed.add(lab)
        for u in _subsets(S, nonempty=True):
            for w in _subsets(T):
                cur.add((_union(sig, u, w), sig))
        tr = construction_step(F, step)
        F = tr.F_after
        if want_steps:
            traces.append(tr)
        cur_faces.update(_subsets(sig, nonempty=True))
    if F != _wedge_of(cur):
        raise NonRegularStepError("label bookkeeping diverged from the fibre", None, F)
    return killed, cur, traces


def _solve(V, faces, trace):
    """Labels of the fibre for the complex with face set ``faces`` on vertices ``V``."""
    if trace is None:
        return _solve_cached(V, faces)
    return _solve_impl(V, faces, trace)


@lru_cache(maxsize=8192)
def _solve_cached(V, faces):
    return _solve_impl(V, faces, None)


def _solve_impl(V, faces, trace):
    if len(V) <= 1:
        if trace is not None:
            trace.kind = "base"
            trace.result = SymbolicWedge()
        return frozenset()
    comps = _components(faces, V)
    if len(comps) > 1:
        return _solve_disjoint(V, faces, comps, trace)
    v0, Vp = V[0], V[1:]
    link = frozenset(tuple(x for x in f if x != v0) for f in faces if v0 in f)
    rest = frozenset(f for f in faces if v0 not in f)
    tl = tr = None
    if trace is not None:
        trace.kind = "connected"
        tl, tr = LevelTrace(Vp, "link"), LevelTrace(Vp, "rest")
        trace.children += [tl, tr]
    FS = _solve(Vp, link, tl)
    FR = _solve(Vp, rest, tr)
    killed, final, steps = _path(Vp, link, rest, FS, trace is not None)
    if final != set(FR):
        raise NonRegularStepError("path from the link does not end at the rest fibre")
    retract = set(FS) - killed
    out = set(retract)
    for J, F in killed:
        out.add(((v0,) + J, _union(F, (J[0],))))
    for J, F in set(FR) - retract:
        out.add((J, F))
        out.add(((v0,) + J, F))
    res = frozenset(out)
    if trace is not None:
        trace.link_fibre = _wedge_of(FS)
        trace.rest_fibre = _wedge_of(FR)
        trace.split = ThetaSplit(_wedge_of(killed), _wedge_of(retract),
                                 tuple(sorted(killed)), tuple(sorted(retract)), tuple(steps))
        trace.result = _wedge_of(res)
    return res


def _solve_disjoint(V, faces, comps, trace):
    # a shifted complex is one component plus isolated points
    V1 = comps[0]
    V2 = tuple(v for v in V if v not in V1)
    if any(len(c) != 1 for c in comps[1:]) or V1[0] != V[0]:
        raise NotShiftedError("disconnected complex is not a component plus isolated points")
    f1 = frozenset(f for f in faces if set(f) <= set(V1))
    t1 = None
    if trace is not None:
        trace.kind = "disjoint"
        t1 = LevelTrace(V1, "component")
        trace.children.append(t1)
    L1 = _solve(V1, f1, t1)
    by_A = {}
    for J, F in L1:
        by_A.setdefault(J, []).append(F)
    out = set(L1)
    for B in _subsets(V2, nonempty=True):
        for A in _subsets(V1):
            J = _union(A, B)
            if len(J) < 2:
                continue
            for b in B:
                if not A and b == B[0]:
                    continue
                out.add((J, (b,)))
            for F in by_A.get(A, ()):
                out.add((J, F))
    res = frozenset(out)
    if trace is not None:
        trace.result = _wedge_of(res)
    return res


def _faces_and_vertices(K: SimplicialComplex):
    return K.ground, frozenset(K.face_set())


def decompose_labels(K: SimplicialComplex) -> frozenset:
    """Labels (J, F) of all summands; the summand is (|F|, J)."""
    _require_decomposable(K)
    V, fs = _faces_and_vertices(K)
    return _solve(V, fs, None)


def decompose(K: SimplicialComplex) -> SymbolicWedge:
    """Symbolic wedge decomposition of Z_K for K shifted in its ground order, without ghosts."""
    return _wedge_of(decompose_labels(K))


@dataclass(frozen=True)
class Decomposition:
    wedge: SymbolicWedge
    labels: frozenset
    root: LevelTrace

    def step_traces(self) -> list:
        out = []
        for node in self.root.walk():
            if node.split is not None:
                out.extend(node.split.steps)
        return out


def decompose_with_trace(K: SimplicialComplex) -> Decomposition:
    _require_decomposable(K)
    V, fs = _faces_and_vertices(K)
    root = LevelTrace(V, "root")
    labels = _solve(V, fs, root)
    return Decomposition(_wedge_of(labels), labels, root)


def split_theta(K: SimplicialComplex) -> ThetaSplit:
    """Split of the link fibre of the first vertex (isolated vertices added to the link as points)."""
    _require_decomposable(K)
    V, fs = _faces_and_vertices(K)
    if len(V) < 2:
        return ThetaSplit(SymbolicWedge(), SymbolicWedge())
    v0, Vp = V[0], V[1:]
    link = frozenset({tuple(x for x in f if x != v0) for f in fs if v0 in f} | {(v,) for v in Vp})
    rest = frozenset(f for f in fs if v0 not in f)
    FS = _solve(Vp, link, None)
    FR = _solve(Vp, rest, None)
    killed, final, steps = _path(Vp, link, rest, FS, True)
    if final != set(FR):
        raise NonRegularStepError("path from the link does not end at the rest fibre")
    retract = set(FS) - killed
    return ThetaSplit(_wedge_of(killed), _wedge_of(retract), tuple(sorted(killed)), tuple(sorted(retract)), tuple(steps))


def disjoint_union_formula(W1: SymbolicWedge, V1, W2: SymbolicWedge, V2) -> SymbolicWedge:
    """Fibre of a disjoint union from the fibres of its parts (on disjoint vertex sets)."""
    return torus_join_torus(V1, V2) + half_smash_right(W1, V2) + half_smash_left(V1, W2)
