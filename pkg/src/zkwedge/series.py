"""Exact univariate polynomials and rational functions over Z, face-ring Poincare series, Golod verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Optional, Sequence


class IntPolynomial:
    """Polynomial in t with integer coefficients; ``coeffs[i]`` is the t^i coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_dict(cls, d: dict) -> "IntPolynomial":
        if not d:
            return cls()
        c = [0] * (max(d) + 1)
        for k, v in d.items():
            if k < 0:
                raise ValueError("negative exponent")
            c[k] += v
        return cls(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def one_plus_t_power(cls, n: int) -> "IntPolynomial":
        return cls([comb(n, i) for i in range(n + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        return IntPolynomial([other]) if isinstance(other, int) else other

    def __add__(self, other):
        other = self._coerce(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(k)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        g = self.content()
        if g == 0:
            return self
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient when ``other`` divides ``self`` exactly in Z[t]; ValueError otherwise."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + other.degree]
            if c % lead:
                raise ValueError("inexact polynomial division")
            c //= lead
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        if any(rem):
            raise ValueError("inexact polynomial division")
        return IntPolynomial(q)

    def pseudo_rem(self, other: "IntPolynomial") -> "IntPolynomial":
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and any(rem):
            c = rem[-1]
            shift = len(rem) - 1 - d
            rem = [lead * x for x in rem]
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return IntPolynomial(rem)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs)):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """gcd in Z[t]: gcd of contents times the primitive Euclid gcd, positive leading coefficient."""
    if not a:
        return b.primitive() * (b.content() or 1) if b else IntPolynomial()
    if not b:
        return a.primitive() * a.content()
    c = gcd(a.content(), b.content())
    x, y = a.primitive(), b.primitive()
    if x.degree < y.degree:
        x, y = y, x
    while y:
        r = x.pseudo_rem(y)
        x, y = y, (r.primitive() if r else r)
    return x.primitive() * c


class RationalFunction:
    """Normalized quotient num/den in Z(t): coprime in Z[t], lowest nonzero den coefficient positive."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize: bool = True):
        num = IntPolynomial([num]) if isinstance(num, int) else num
        den = IntPolynomial([1]) if den is None else (IntPolynomial([den]) if isinstance(den, int) else den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if normalize:
            if not num:
                den = IntPolynomial([1])
            else:
                g = poly_gcd(num, den)
                num, den = num.exact_div(g), den.exact_div(g)
                low = next(c for c in den.coeffs if c)
                if low < 0:
                    num, den = -num, -den
        self.num, self.den = num, den

    def __eq__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            other = RationalFunction(other)
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        return other if isinstance(other, RationalFunction) else RationalFunction(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def series(self, order: int) -> list:
        return series_coeffs(self, order)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == IntPolynomial([1]):
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def series_coeffs(R: RationalFunction, order: int) -> list:
    """First ``order + 1`` power-series coefficients of R by long division."""
    den = R.den
    if den[0] == 0:
        raise ValueError("denominator has zero constant term; no power series expansion")
    d0 = den[0]
    out = []
    for k in range(order + 1):
        acc = Fraction(R.num[k])
        for i in range(1, min(k, den.degree) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / d0)
    return [int(c) if c.denominator == 1 else c for c in out]


def ratfun(kind: str, *args):
    """Dispatcher: add, mul, div, normalize, series_coeffs(R, order)."""
    if kind == "add":
        return args[0] + args[1]
    if kind == "mul":
        return args[0] * args[1]
    if kind == "div":
        return RationalFunction(args[0]) / args[1] if not isinstance(args[0], RationalFunction) else args[0] / args[1]
    if kind == "normalize":
        num, den = args
        return RationalFunction(num, den)
    if kind == "series_coeffs":
        return series_coeffs(args[0], args[1])
    raise ValueError(f"unknown ratfun kind {kind!r}")


T = IntPolynomial([0, 1])


def face_ring_poincare(n: int, p_reduced: IntPolynomial) -> RationalFunction:
    """t(1+t)^n / (t - P~), with P~ the reduced Poincare polynomial of the moment-angle complex.

    This is the Poincare series of the face ring when it is Golod and an
    upper bound otherwise; the caller decides which label applies.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if any(p_reduced[i] for i in range(3)):
        raise ValueError("reduced Poincare polynomial must start in degree >= 3")
    if any(c < 0 for c in p_reduced.coeffs):
        raise ValueError("Poincare polynomial has negative coefficients")
    return RationalFunction(T * IntPolynomial.one_plus_t_power(n), T - p_reduced)


def classical_series(kind: str, *params) -> RationalFunction:
    """serre(n) = (1+t)^n; tate(n, m) = (1+t)^n/(1-t^2)^m; golod_general(n, c) = (1+t)^n/(1 - sum c_i t^(i+1))."""
    if any((isinstance(p, int) and p < 0) for p in params):
        raise ValueError("parameters must be nonnegative")
    if kind == "serre":
        (n,) = params
        return RationalFunction(IntPolynomial.one_plus_t_power(n))
    if kind == "tate":
        n, m = params
        return RationalFunction(IntPolynomial.one_plus_t_power(n), IntPolynomial([1, 0, -1]) ** m)
    if kind == "golod_general":
        n, c = params
        if any(x < 0 for x in c):
            raise ValueError("parameters must be nonnegative")
        den = {0: 1}
        for i, ci in enumerate(c, start=1):
            den[i + 1] = den.get(i + 1, 0) - ci
        return RationalFunction(IntPolynomial.one_plus_t_power(n), IntPolynomial.from_dict(den))
    raise ValueError(f"unknown series kind {kind!r}")


@dataclass(frozen=True)
class GolodVerdict:
    """``status`` is golod or unknown; there is no procedure that proves a ring is not Golod."""
    status: str
    reason: str = "none"

    def __post_init__(self):
        if self.status not in ("golod", "unknown"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "golod" and self.reason == "none":
            raise ValueError("a golod verdict needs a reason")

    @property
    def golod(self) -> bool:
        return self.status == "golod"


def golod_verdict(K, decomposition_available: bool = False, certificate=None) -> GolodVerdict:
    """Sufficient-condition Golod check.

    Shifted under some order (search, n <= 10; ground order only above that)
    gives ``shifted``.  Otherwise a t=0 family certificate for this complex,
    or the caller's assurance that an unsuspended wedge decomposition exists,
    gives ``wedge_member_F0``.
    """
    from .scomplex import SEARCH_CAP, is_shifted
    mode = "search" if K.n <= SEARCH_CAP else "given"
    if is_shifted(K, mode).shifted:
        return GolodVerdict("golod", "shifted")
    if certificate is not None and certificate.t == 0 and certificate.K == K:
        return GolodVerdict("golod", "wedge_member_F0")
    if decomposition_available:
        return GolodVerdict("golod", "wedge_member_F0")
    return GolodVerdict("unknown", "none")
