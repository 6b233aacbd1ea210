"""Exact integral simplicial homology via Smith normal form.

Everything uses the augmented chain complex, so the homology is reduced and
the complex ``{()}`` has a single class in degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .scomplex import SimplicialComplex


@dataclass(frozen=True)
class SnfResult:
    """Nonzero invariant factors d_1 | d_2 | ... and, if requested, P, Q with P*A*Q = D."""
    diagonal: tuple
    rank: int
    P: Optional[list] = None
    Q: Optional[list] = None


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A, transforms: bool = False) -> SnfResult:
    """Smith normal form of an integer matrix given as a list of rows.

    Pivots are chosen with the smallest nonzero magnitude, which keeps the
    entries of boundary matrices (mostly 0 and +-1) from growing.
    """
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ValueError("ragged matrix")
    P = _identity(rows) if transforms else None
    Q = _identity(cols) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if P is not None:
            P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if Q is not None:
            for r in Q:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row dst += c * row src
        rs, rd = M[src], M[dst]
        for k in range(cols):
            if rs[k]:
                rd[k] += c * rs[k]
        if P is not None:
            ps, pd = P[src], P[dst]
            for k in range(rows):
                if ps[k]:
                    pd[k] += c * ps[k]

    def add_col(dst, src, c):
        for r in M:
            if r[src]:
                r[dst] += c * r[src]
        if Q is not None:
            for r in Q:
                if r[src]:
                    r[dst] += c * r[src]

    diag = []
    t = 0
    while t < rows and t < cols:
        best = None
        for i in range(t, rows):
            r = M[i]
            for j in range(t, cols):
                a = r[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            moved = False
            for i in range(t + 1, rows):
                a = M[i][t]
                if a:
                    add_row(i, t, -(a // p))
                    if M[i][t]:
                        moved = True
            for j in range(t + 1, cols):
                a = M[t][j]
                if a:
                    add_col(j, t, -(a // p))
                    if M[t][j]:
                        moved = True
            if moved:
                # a smaller remainder exists in row t or column t; pivot on it
                best = None
                for i in range(t, rows):
                    a = M[i][t]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, t)
                for j in range(t, cols):
                    a = M[t][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # row and column are clear; enforce divisibility of the rest
            bad = None
            if abs(p) != 1:
                for i in range(t + 1, rows):
                    r = M[i]
                    for j in range(t + 1, cols):
                        if r[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if P is not None:
                P[t] = [-x for x in P[t]]
        diag.append(M[t][t])
        t += 1
    return SnfResult(tuple(diag), len(diag), P, Q)


def rank_over_field(A, p: int = 0) -> int:
    """Rank over Q (p=0) or F_p by fraction-free / modular elimination."""
    from fractions import Fraction
    M = [[(Fraction(x) if p == 0 else x % p) for x in row] for row in A]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = (1 / M[rank][c]) if p == 0 else pow(M[rank][c], -1, p)
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] * inv
                M[i] = [(a - f * b) if p == 0 else (a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


# chain complexes

def faces_by_dim(faces) -> dict:
    """Group an iterable of faces (including ``()``) by dimension, each list lex sorted."""
    by = {}
    for f in faces:
        by.setdefault(len(f) - 1, []).append(f)
    for d in by:
        by[d].sort()
    return by


def boundary_matrix(lower, upper) -> list:
    """Matrix of the boundary from ``upper`` (d-faces, columns) to ``lower`` ((d-1)-faces, rows)."""
    index = {f: i for i, f in enumerate(lower)}
    M = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        for k in range(len(f)):
            M[index[f[:k] + f[k + 1:]]][j] = -1 if k % 2 else 1
    return M


@dataclass(frozen=True)
class HomologySummary:
    """Reduced integral homology: ``betti[d]`` and ``torsion[d]`` (invariant factors > 1)."""
    betti: dict
    torsion: dict = field(default_factory=dict)

    def rank(self, d: int) -> int:
        return self.betti.get(d, 0)

    def torsion_at(self, d: int) -> tuple:
        return self.torsion.get(d, ())

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion.values())

    def degrees(self) -> list:
        return sorted(set(self.betti) | set(self.torsion))

    def euler(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())


def homology_of_faces(faces) -> HomologySummary:
    """Reduced homology of the complex whose full face set (with ``()``) is ``faces``."""
    by = faces_by_dim(faces)
    top = max(by)
    # rank and torsion of each boundary d_k : C_k -> C_{k-1}, k = 0..top
    ranks, tors = {}, {}
    for k in range(0, top + 1):
        lower, upper = by.get(k - 1, []), by.get(k, [])
        if not lower or not upper:
            ranks[k], tors[k] = 0, ()
            continue
        snf = smith_normal_form(boundary_matrix(lower, upper))
        ranks[k] = snf.rank
        tors[k] = tuple(d for d in snf.diagonal if d > 1)
    betti, torsion = {}, {}
    for d in range(-1, top + 1):
        b = len(by.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b:
            betti[d] = b
        t = tors.get(d + 1, ())
        if t:
            torsion[d] = t
    return HomologySummary(betti, torsion)


def reduced_homology(K: SimplicialComplex) -> HomologySummary:
    return homology_of_faces(K.face_set())


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def field_dims(H: HomologySummary, p: int = 0) -> dict:
    """Reduced cohomology dimensions over Q (p=0) or F_p from integral homology.

    Over F_p, H^d picks up one dimension for each p-divisible invariant factor
    of H_d (the Hom part) and of H_{d-1} (the Ext part).
    """
    if p and not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = {}
    degs = set(H.degrees()) | {d + 1 for d in H.torsion}
    for d in sorted(degs):
        v = H.rank(d)
        if p:
            v += sum(1 for t in H.torsion_at(d) if t % p == 0)
            v += sum(1 for t in H.torsion_at(d - 1) if t % p == 0)
        if v:
            out[d] = v
    return out


def cohomology_dims(K: SimplicialComplex, field: int = 0) -> dict:
    """Reduced cohomology dimensions of K; ``field`` is 0 for Q or a prime p."""
    if field and not _is_prime(field):
        raise ValueError(f"{field} is not prime")
    return field_dims(reduced_homology(K), field)
