"""Finite abstract simplicial complexes on an ordered vertex set.

A complex keeps its ground set (an increasing tuple of integer labels,
``1..n`` for complexes built with :func:`construct`) and its maximal faces.
The full face set is materialized on first use and then cached.  Faces are
increasing tuples of labels; the empty tuple is the empty face.

Subcomplex operators (link, star, rest, full) keep the original labels, so a
link of vertex 1 in a complex on ``1..n`` lives on the ground set ``2..n``.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ComplexError, SizeLimitError

Simplex = tuple

SEARCH_CAP = 10


def _check_face(face, ground_set, where=""):
    verts = list(face)
    for v in verts:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ComplexError(f"non-integer vertex {v!r}{where}")
        if v not in ground_set:
            raise ComplexError(f"vertex {v} out of range{where}")
    if len(set(verts)) != len(verts):
        raise ComplexError(f"duplicate vertex in face {tuple(verts)}{where}")
    return tuple(sorted(verts))


def _maximal(faces):
    # Largest first so that every kept face is only tested against kept ones.
    out = []
    faces = [f for f in faces if f]
    for f in sorted(set(faces), key=lambda f: (-len(f), f)):
        fs = set(f)
        if not any(fs <= set(g) for g in out):
            out.append(f)
    return tuple(sorted(out))


class SimplicialComplex:
    """Immutable simplicial complex stored by its maximal faces.

    Ghost vertices (ground labels that are not faces) are allowed.  The
    closure is computed lazily under a lock so that concurrent readers see a
    single initialization.
    """

    __slots__ = ("_ground", "_maximal", "_faces", "_lock", "_hash")

    def __init__(self, ground: Iterable[int], maximal_faces: Iterable[Sequence[int]]):
        ground = tuple(sorted(set(ground)))
        gs = set(ground)
        faces = [_check_face(f, gs) for f in maximal_faces]
        self._ground = ground
        self._maximal = _maximal(faces)
        self._faces = None
        self._lock = threading.Lock()
        self._hash = None

    # basic data

    @property
    def ground(self) -> tuple:
        return self._ground

    @property
    def n(self) -> int:
        return len(self._ground)

    @property
    def maximal_faces(self) -> tuple:
        """Maximal faces in lex order.  The complex ``{()}`` has ``((),)``."""
        if not self._maximal:
            return ((),)
        return self._maximal

    def face_set(self) -> frozenset:
        if self._faces is None:
            with self._lock:
                if self._faces is None:
                    acc = {()}
                    for m in self._maximal:
                        for r in range(1, len(m) + 1):
                            acc.update(itertools.combinations(m, r))
                    self._faces = frozenset(acc)
        return self._faces

    def __contains__(self, face) -> bool:
        face = tuple(sorted(face))
        if self._faces is not None:
            return face in self._faces
        fs = set(face)
        return not fs or any(fs <= set(m) for m in self._maximal)

    def faces(self, dim: Optional[int] = None) -> list:
        """All faces (or those of one dimension) in left-lex order, shorter prefix first."""
        fs = self.face_set()
        if dim is not None:
            fs = [f for f in fs if len(f) == dim + 1]
        return sorted(fs)

    @property
    def dim(self) -> int:
        return max(len(m) for m in self.maximal_faces) - 1

    def f_vector(self) -> list:
        """Face counts by dimension starting at -1 (the empty face)."""
        counts = [0] * (self.dim + 2)
        for f in self.face_set():
            counts[len(f)] += 1
        return counts

    def vertices(self) -> tuple:
        """Labels that are actual 0-faces."""
        return tuple(sorted({v for m in self._maximal for v in m}))

    def ghosts(self) -> tuple:
        present = set(self.vertices())
        return tuple(v for v in self._ground if v not in present)

    def is_simplex(self) -> bool:
        return len(self.maximal_faces) == 1 and self.maximal_faces[0] == self._ground

    # value semantics

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._ground == other._ground and self._maximal == other._maximal

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ground, self._maximal))
        return self._hash

    def __repr__(self):
        mf = " ".join("".join(map(str, m)) if max(self._ground, default=0) < 10 else str(m)
                      for m in self.maximal_faces)
        return f"SimplicialComplex(ground={list(self._ground)}, maximal=[{mf}])"

    # subcomplexes

    def link(self, sigma) -> "SimplicialComplex":
        return subcomplex(self, "link", sigma)

    def star(self, sigma) -> "SimplicialComplex":
        return subcomplex(self, "star", sigma)

    def rest(self, verts) -> "SimplicialComplex":
        return subcomplex(self, "rest", verts)

    def full(self, verts) -> "SimplicialComplex":
        return subcomplex(self, "full", verts)


def construct(n: int, faces: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex on ``1..n`` generated by ``faces``."""
    if n < 0:
        raise ComplexError("vertex count must be nonnegative")
    return SimplicialComplex(range(1, n + 1), faces)


def from_faces(ground, faces) -> SimplicialComplex:
    """Complex on an arbitrary ground set, generated by ``faces``."""
    return SimplicialComplex(ground, faces)


def simplex(verts) -> SimplicialComplex:
    verts = tuple(sorted(verts))
    return SimplicialComplex(verts, [verts])


def skeleton(n: int, q: int) -> SimplicialComplex:
    """All subsets of ``1..n`` with at most ``q`` elements."""
    if not 0 <= q <= n:
        raise ComplexError(f"skeleton needs 0 <= q <= n, got n={n}, q={q}")
    return construct(n, itertools.combinations(range(1, n + 1), q))


def shifted_closure(n: int, generators: Iterable[Sequence[int]], all_vertices: bool = True) -> SimplicialComplex:
    """Smallest complex on ``1..n`` shifted in the natural order that contains ``generators``.

    A set g lies below a generator f when, comparing g with the |g| largest
    elements of f in increasing order, each entry of g is no larger.
    """
    gens = [tuple(sorted(_check_face(f, set(range(1, n + 1))))) for f in generators]
    if all_vertices and n:
        gens.append((n,))
    faces = set()
    for f in _maximal(gens):
        for r in range(1, len(f) + 1):
            top = f[len(f) - r:]
            for g in itertools.combinations(range(1, top[-1] + 1), r):
                if all(a <= b for a, b in zip(g, top)):
                    faces.add(g)
    return construct(n, faces)


def subcomplex(K: SimplicialComplex, kind: str, arg) -> SimplicialComplex:
    """link or star of a face; rest or full subcomplex on a vertex subset.

    ``rest`` and ``full`` coincide: both keep the faces of K inside the given
    vertex subset.  The star keeps K's ground set; the others use the natural
    smaller one (``rest``/``full``: ``arg``; ``link``: ground minus sigma).
    """
    if kind in ("link", "star"):
        sigma = _check_face(arg, set(K.ground), " in link/star argument")
        if sigma not in K:
            raise ComplexError(f"{sigma} is not a face")
        s = set(sigma)
        if kind == "star":
            gens = [m for m in K._maximal if s <= set(m)] or [()]
            return SimplicialComplex(K.ground, gens)
        gens = [tuple(v for v in m if v not in s) for m in K._maximal if s <= set(m)]
        return SimplicialComplex([v for v in K.ground if v not in s], gens)
    if kind in ("rest", "full"):
        w = set(_check_face(arg, set(K.ground), " in vertex subset"))
        gens = [tuple(v for v in m if v in w) for m in K._maximal]
        return SimplicialComplex(sorted(w), gens)
    raise ValueError(f"unknown subcomplex kind {kind!r}")


def relabel(K: SimplicialComplex, mapping: dict, ground=None) -> SimplicialComplex:
    """Apply an injective vertex map.  ``ground`` defaults to the image of K's ground set."""
    if ground is None:
        ground = [mapping[v] for v in K.ground]
    return SimplicialComplex(ground, [[mapping[v] for v in m] for m in K._maximal])


def standardize(K: SimplicialComplex) -> tuple:
    """Relabel onto ``1..n`` preserving order; returns (complex, old->new map)."""
    mp = {v: i + 1 for i, v in enumerate(K.ground)}
    return relabel(K, mp), mp


# combinators

@dataclass(frozen=True)
class GlueLayout:
    """Result of gluing K1 and K2 along a common face, with the vertex maps used.

    On the combined ground set ``1..n``: K1 occupies ``1..m``, the shared face
    ``l+1..m`` and K2 ``l+1..n``.
    """
    complex: SimplicialComplex
    map1: dict
    map2: dict
    l: int
    m: int

    @property
    def only1(self) -> tuple:
        return tuple(range(1, self.l + 1))

    @property
    def only2(self) -> tuple:
        return tuple(range(self.m + 1, self.complex.n + 1))


def glue_layout(K1: SimplicialComplex, K2: SimplicialComplex, face1=(), face2=()) -> GlueLayout:
    """Glue along ``face1`` of K1 identified with ``face2`` of K2, vertex by vertex in increasing order."""
    face1 = tuple(sorted(face1))
    face2 = tuple(sorted(face2))
    if len(face1) != len(face2):
        raise ComplexError("glued faces must have the same dimension")
    if face1 not in K1 or face2 not in K2:
        raise ComplexError("glue argument is not a face of both complexes")
    if len(set(face1)) != len(face1) or len(set(face2)) != len(face2):
        raise ComplexError("inconsistent identification")
    own1 = [v for v in K1.ground if v not in face1]
    own2 = [v for v in K2.ground if v not in face2]
    l = len(own1)
    m = l + len(face1)
    map1 = {v: i + 1 for i, v in enumerate(own1)}
    map2 = {}
    for i, (a, b) in enumerate(zip(face1, face2)):
        map1[a] = l + 1 + i
        map2[b] = l + 1 + i
    for i, v in enumerate(own2):
        map2[v] = m + 1 + i
    n = m + len(own2)
    gens = [[map1[v] for v in f] for f in K1._maximal]
    gens += [[map2[v] for v in f] for f in K2._maximal]
    return GlueLayout(SimplicialComplex(range(1, n + 1), gens), map1, map2, l, m)


def join_layout(K1: SimplicialComplex, K2: SimplicialComplex) -> GlueLayout:
    """Join with K1 on ``1..n1`` and K2 on ``n1+1..n1+n2`` (l = m = n1 in the layout)."""
    n1 = K1.n
    map1 = {v: i + 1 for i, v in enumerate(K1.ground)}
    map2 = {v: n1 + i + 1 for i, v in enumerate(K2.ground)}
    gens = [[map1[v] for v in a] + [map2[v] for v in b]
            for a in K1.maximal_faces for b in K2.maximal_faces]
    return GlueLayout(SimplicialComplex(range(1, n1 + K2.n + 1), gens), map1, map2, n1, n1)


def combine(kind: str, K1: SimplicialComplex, K2: SimplicialComplex, sigma=None) -> SimplicialComplex:
    """disjoint_union, glue (``sigma=(face_of_K1, face_of_K2)``) or join."""
    if kind == "disjoint_union":
        return glue_layout(K1, K2).complex
    if kind == "glue":
        if sigma is None:
            raise ComplexError("glue needs a face pair")
        f1, f2 = sigma
        return glue_layout(K1, K2, f1, f2).complex
    if kind == "join":
        return join_layout(K1, K2).complex
    raise ValueError(f"unknown combine kind {kind!r}")


# shiftedness

@dataclass(frozen=True)
class ShiftVerdict:
    """``order`` lists the vertices first-to-last when shifted; ``violation`` is (sigma, v, v') otherwise."""
    shifted: bool
    order: Optional[tuple] = None
    violation: Optional[tuple] = None
    searched: bool = False

    def __bool__(self):
        return self.shifted


def _dominates(K: SimplicialComplex, u, v) -> Optional[tuple]:
    """None if u may precede v; otherwise a maximal face witnessing the failure.

    Checking maximal faces is enough: any face containing v but not u sits in
    a maximal face m containing v, and either u is in m or the swap of m works.
    """
    for m in K._maximal:
        if v in m and u not in m:
            swapped = tuple(sorted([x for x in m if x != v] + [u]))
            if swapped not in K:
                return m
    return None


def is_shifted(K: SimplicialComplex, mode: str = "given") -> ShiftVerdict:
    """Shiftedness under the ground order (``given``) or under some order (``search``)."""
    if mode in ("given", "given_order"):
        g = K.ground
        for j, v in enumerate(g):
            for u in g[:j]:
                m = _dominates(K, u, v)
                if m is not None:
                    return ShiftVerdict(False, violation=(m, v, u))
        return ShiftVerdict(True, order=g)
    if mode != "search":
        raise ValueError(f"unknown mode {mode!r}")
    if K.n > SEARCH_CAP:
        raise SizeLimitError(f"shifted search limited to n <= {SEARCH_CAP}, got n = {K.n}")
    g = K.ground
    dom = {(u, v): _dominates(K, u, v) is None for u in g for v in g if u != v}

    # A vertex may be placed next only if it dominates everything still unplaced;
    # any valid order passes this filter, so backtracking over it is exhaustive.
    def search(placed, remaining):
        if not remaining:
            return placed
        for u in remaining:
            if all(dom[(u, v)] for v in remaining if v != u):
                got = search(placed + (u,), tuple(v for v in remaining if v != u))
                if got is not None:
                    return got
        return None

    order = search((), g)
    if order is None:
        return ShiftVerdict(False, searched=True)
    return ShiftVerdict(True, order=order, searched=True)


def shifted_relabeling(K: SimplicialComplex) -> Optional[dict]:
    """Map old label -> new label making K shifted in ground order, or None."""
    v = is_shifted(K, "search")
    if not v.shifted:
        return None
    return {old: new for old, new in zip(v.order, K.ground)}


def components(K: SimplicialComplex) -> list:
    """Connected components of the 1-skeleton as sorted vertex tuples (ghosts omitted)."""
    parent = {v: v for v in K.vertices()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in K._maximal:
        for v in m[1:]:
            parent[find(v)] = find(m[0])
    groups = {}
    for v in K.vertices():
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in groups.values())


def enumerate_shifted(n: int) -> list:
    """Every complex on ``1..n`` that contains all vertices and is shifted in the natural order.

    Grows complexes one face at a time; a face may be added once its facets
    and all its shift-predecessors are present.  Output is sorted by face count
    then maximal faces, so it is deterministic.
    """
    V = range(1, n + 1)
    start = frozenset([()] + [(v,) for v in V])
    allf = [f for r in range(2, n + 1) for f in itertools.combinations(V, r)]
    seen = {start}
    stack = [start]
    while stack:
        K = stack.pop()
        for g in allf:
            if g in K:
                continue
            if not all(g[:i] + g[i + 1:] in K for i in range(len(g))):
                continue
            if not all(tuple(sorted(set(g) - {v} | {w})) in K for v in g for w in range(1, v) if w not in g):
                continue
            K2 = K | {g}
            if K2 not in seen:
                seen.add(K2)
                stack.append(K2)
    out = [construct(n, fs) for fs in seen]
    out.sort(key=lambda K: (len(K.face_set()), K.maximal_faces))
    return out
