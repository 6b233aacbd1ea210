"""Symbolic wedges of suspended smash products of loop factors.

A summand (s, I) stands for the s-fold suspension of the smash of the loop
spaces Omega X_i over i in I.  When each X_i is CP^infinity (or HP^infinity)
the loop space is S^1 (or S^3), so (s, I) realizes as the sphere
S^{s + l*|I|} with l the loop dimension.  A join A*B is rewritten as the
suspension of A smash B.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb
from typing import Iterable

from .errors import WedgeError
from .series import IntPolynomial


def _key(s, I):
    I = tuple(sorted(I))
    if len(set(I)) != len(I):
        raise WedgeError(f"repeated loop index in {I}")
    return (int(s), I)


def _subsets(xs, nonempty=False):
    xs = sorted(xs)
    for r in range(1 if nonempty else 0, len(xs) + 1):
        yield from itertools.combinations(xs, r)


class SymbolicWedge:
    """Immutable multiset of summands (s, I) with positive multiplicities."""

    __slots__ = ("_c", "_hash")

    def __init__(self, summands=()):
        c = Counter()
        if isinstance(summands, (SymbolicWedge,)):
            c.update(summands._c)
        elif isinstance(summands, dict):
            for (s, I), m in summands.items():
                c[_key(s, I)] += m
        else:
            for item in summands:
                if len(item) == 2:
                    (s, I), m = item, 1
                else:
                    s, I, m = item
                c[_key(s, I)] += m
        for (s, I), m in c.items():
            if m < 0:
                raise WedgeError("negative multiplicity")
            if m and s < 1:
                raise WedgeError(f"summand ({s}, {I}) is not a suspension")
            if m and not I:
                raise WedgeError("summand with empty index set")
        self._c = Counter({k: m for k, m in c.items() if m})
        self._hash = None

    @classmethod
    def _raw(cls, counter):
        # internal constructor skipping validation
        w = cls.__new__(cls)
        w._c = Counter({k: m for k, m in counter.items() if m})
        w._hash = None
        return w

    def items(self) -> list:
        """(s, I, mult) triples sorted by realized size then lex."""
        return [(s, I, m) for (s, I), m in sorted(self._c.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))]

    def mult(self, s, I) -> int:
        return self._c.get(_key(s, I), 0)

    def total(self) -> int:
        return sum(self._c.values())

    def support(self) -> tuple:
        return tuple(sorted({i for (_, I) in self._c for i in I}))

    def counter(self) -> Counter:
        return Counter(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        return isinstance(other, SymbolicWedge) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        return SymbolicWedge._raw(self._c + other._c)

    def __sub__(self, other):
        if not other <= self:
            raise WedgeError("not a sub-multiset")
        c = Counter(self._c)
        c.subtract(other._c)
        return SymbolicWedge._raw(c)

    def __le__(self, other):
        return all(other._c.get(k, 0) >= m for k, m in self._c.items())

    def suspend(self, k: int = 1) -> "SymbolicWedge":
        return SymbolicWedge._raw(Counter({(s + k, I): m for (s, I), m in self._c.items()}))

    def relabel(self, mapping: dict) -> "SymbolicWedge":
        c = Counter()
        for (s, I), m in self._c.items():
            c[_key(s, [mapping[i] for i in I])] += m
        return SymbolicWedge._raw(c)

    def realize(self, loop_dim: int = 1) -> "SphereWedge":
        return realize(self, loop_dim)

    def poincare(self, loop_dim: int = 1) -> IntPolynomial:
        return self.realize(loop_dim).poincare()

    def to_json(self) -> list:
        return [[s, list(I), m] for s, I, m in self.items()]

    def __repr__(self):
        body = ", ".join(f"({s},{{{','.join(map(str, I))}}})" + (f"x{m}" if m > 1 else "") for s, I, m in self.items())
        return f"SymbolicWedge[{body}]"


class SphereWedge:
    """Multiset of sphere dimensions; empty means contractible."""

    __slots__ = ("_c",)

    def __init__(self, dims: Iterable[int] = ()):
        if isinstance(dims, dict):
            c = Counter({int(d): int(m) for d, m in dims.items() if m})
        else:
            c = Counter(int(d) for d in dims)
        if any(d < 1 for d in c) or any(m < 0 for m in c.values()):
            raise WedgeError("sphere dimensions must be >= 1")
        self._c = c

    @classmethod
    def from_poincare(cls, P: IntPolynomial) -> "SphereWedge":
        if any(c < 0 for c in P.coeffs) or P[0]:
            raise WedgeError("not the reduced Poincare polynomial of a wedge of spheres")
        return cls({d: c for d, c in enumerate(P.coeffs) if c})

    def counts(self) -> dict:
        return dict(sorted(self._c.items()))

    def dims(self) -> list:
        return sorted(self._c.elements())

    def total(self) -> int:
        return sum(self._c.values())

    def poincare(self) -> IntPolynomial:
        return IntPolynomial.from_dict(dict(self._c))

    def shift(self, k: int) -> "SphereWedge":
        return SphereWedge({d + k: m for d, m in self._c.items()})

    def __add__(self, other):
        return SphereWedge(dict(self._c + other._c))

    def __eq__(self, other):
        return isinstance(other, SphereWedge) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        if not self._c:
            return "point"
        return ", ".join(f"S^{d} x{m}" if m > 1 else f"S^{d}" for d, m in sorted(self._c.items()))

    def __repr__(self):
        return f"SphereWedge({self.counts()})"

    def to_json(self) -> dict:
        return {str(d): m for d, m in sorted(self._c.items())}


def realize(W: SymbolicWedge, loop_dim: int = 1) -> SphereWedge:
    if loop_dim not in (1, 3):
        raise WedgeError("loop dimension must be 1 (complex) or 3 (quaternionic)")
    c = Counter()
    for (s, I), m in W._c.items():
        c[s + loop_dim * len(I)] += m
    return SphereWedge(dict(c))


EMPTY = SymbolicWedge()


def _as_raw(x) -> Counter:
    # an int i stands for the bare loop factor Omega X_i, i.e. (0, {i})
    if isinstance(x, int) and not isinstance(x, bool):
        return Counter({(0, (x,)): 1})
    if isinstance(x, SymbolicWedge):
        return x._c
    raise WedgeError(f"cannot use {x!r} as a wedge operand")


def _smash_raw(a: Counter, b: Counter) -> Counter:
    out = Counter()
    for (s1, I1), m1 in a.items():
        for (s2, I2), m2 in b.items():
            if set(I1) & set(I2):
                raise WedgeError(f"smash of overlapping supports {I1} and {I2}")
            out[(s1 + s2, tuple(sorted(I1 + I2)))] += m1 * m2
    return out


def _finish(c: Counter) -> SymbolicWedge:
    for (s, I), m in c.items():
        if m and s < 1:
            raise WedgeError("result is not a suspension")
    return SymbolicWedge._raw(c)


def combine_wedge(kind: str, *args) -> SymbolicWedge:
    """wedge(W1, W2, ...), suspend(k, W), smash(A, B), join(A, B).

    Operands of smash and join may be ints, meaning a single loop factor.
    """
    if kind == "wedge":
        c = Counter()
        for w in args:
            c += _as_raw(w)
        return _finish(c)
    if kind == "suspend":
        k, w = args
        if k < 0:
            raise WedgeError("negative suspension")
        return _finish(Counter({(s + k, I): m for (s, I), m in _as_raw(w).items()}))
    if kind == "smash":
        a, b = args
        return _finish(_smash_raw(_as_raw(a), _as_raw(b)))
    if kind == "join":
        a, b = args
        return _finish(Counter({(s + 1, I): m for (s, I), m in _smash_raw(_as_raw(a), _as_raw(b)).items()}))
    raise WedgeError(f"unknown wedge operation {kind!r}")


def _check_disjoint(W: SymbolicWedge, J):
    if set(W.support()) & set(J):
        raise WedgeError(f"torus indices {sorted(J)} overlap wedge support {W.support()}")


def smash_with_torus(W: SymbolicWedge, J) -> SymbolicWedge:
    """W smash the product of Omega X_j over J, split as a wedge over nonempty U in J."""
    _check_disjoint(W, J)
    c = Counter()
    for (s, I), m in W._c.items():
        for U in _subsets(J, nonempty=True):
            c[(s, tuple(sorted(I + U)))] += m
    return SymbolicWedge._raw(c)


def half_smash_right(W: SymbolicWedge, J) -> SymbolicWedge:
    """W half-smash the torus on J; equals W wedge (W smash torus) for a suspension W."""
    return W + smash_with_torus(W, J)


def half_smash_left(J, W: SymbolicWedge) -> SymbolicWedge:
    return half_smash_right(W, J)


def torus_join_torus(J1, J2) -> SymbolicWedge:
    if set(J1) & set(J2):
        raise WedgeError("overlapping torus supports")
    c = Counter()
    for U in _subsets(J1, nonempty=True):
        for V in _subsets(J2, nonempty=True):
            c[(1, tuple(sorted(U + V)))] += 1
    return SymbolicWedge._raw(c)


def torus_ops(kind: str, W=None, J=()) -> SymbolicWedge:
    """Dispatcher; for torus_join_torus pass ``J=(J1, J2)``."""
    if kind == "smash_with_torus":
        return smash_with_torus(W, J)
    if kind == "half_smash_right":
        return half_smash_right(W, J)
    if kind == "half_smash_left":
        return half_smash_left(J, W)
    if kind == "torus_join_torus":
        J1, J2 = J
        return torus_join_torus(J1, J2)
    raise WedgeError(f"unknown torus operation {kind!r}")


def porter_fibre(n: int, k: int, vertices=None) -> SymbolicWedge:
    """Fibre of T^n_k -> prod X_i, where T^n_k has at least k base-point coordinates.

    One summand (n-k, I) with multiplicity C(|I|-1, n-k) for each I with
    |I| > n-k.  ``vertices`` relabels 1..n.
    """
    if not 1 <= k <= n - 1:
        raise WedgeError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    V = tuple(vertices) if vertices is not None else tuple(range(1, n + 1))
    if len(V) != n:
        raise WedgeError("vertex list has wrong length")
    q = n - k
    c = Counter()
    for j in range(q + 1, n + 1):
        for I in itertools.combinations(sorted(V), j):
            c[(q, I)] += comb(j - 1, q)
    return SymbolicWedge._raw(c)


def porter_spheres(n: int, k: int) -> SphereWedge:
    """Closed form: C(n,j) C(j-1,n-k) copies of S^{n-k+j} for n-k < j <= n."""
    q = n - k
    return SphereWedge({q + j: comb(n, j) * comb(j - 1, q) for j in range(q + 1, n + 1)})
