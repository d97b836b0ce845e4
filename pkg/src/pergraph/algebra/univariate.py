"""Exact univariate polynomials over the rationals.

`UniPoly` stores coefficients lowest degree first.  The module also holds
the univariate toolbox used downstream: Euclidean gcd, squarefree
decomposition, Sturm sequences, real-root isolation and Sylvester
resultants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence

Number = int | Fraction

# isolating intervals are refined at least this far
DEFAULT_WIDTH = Fraction(1, 2**32)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class UniPoly:
    """Polynomial in one variable with `Fraction` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Number) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("L" if k == 1 else f"L^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; exact for rational `x`, float/complex otherwise."""
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.lead
        return UniPoly(c / lead for c in self.coeffs)

    def primitive_integer(self) -> "UniPoly":
        """Scalar multiple with coprime integer coefficients and positive lead."""
        if self.is_zero():
            return self
        den = reduce(ilcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(igcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return UniPoly(Fraction(i // g) for i in ints)

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def gcd_many(polys: Sequence[UniPoly]) -> UniPoly:
    return reduce(poly_gcd, polys, UniPoly())


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic coprime squarefree factors with multiplicities."""
    if p.degree <= 0:
        return []
    p = p.monic()
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def sign_variations(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [s for s in (q.sign_at(x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every root has absolute value strictly below it."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootInterval:
    """Closed interval [lo, hi] containing exactly one real root.

    When ``lo == hi`` the root is the rational number itself.  `poly` is the
    squarefree factor the root belongs to and is used for further refinement.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    poly: UniPoly = field(default=None, compare=False, repr=False)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> Fraction | None:
        return self.lo if self.is_exact else None

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def refine(self, width: Fraction) -> "RootInterval":
        if self.is_exact or self.width < width:
            return self
        lo, hi = _refine_one(self.poly, self.lo, self.hi, width)
        return RootInterval(lo, hi, self.multiplicity, self.poly)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def _refine_one(p, lo, hi, width):
    """Shrink (lo, hi] holding one simple root of squarefree `p` by bisection.

    A simple root is a sign change, so only the sign of `p` is needed.
    """
    s_lo = p.sign_at(lo)
    if s_lo == 0:
        return lo, lo
    if p.sign_at(hi) == 0:
        return hi, hi
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _rational_candidate(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction | None:
    # a rational root r/s of a primitive integer polynomial has s | lead
    lead = abs(int(p.primitive_integer().lead))
    first = -((-lo * lead).__floor__())  # ceil(lo * lead)
    last = (hi * lead).__floor__()
    for m in range(first, last + 1):
        cand = Fraction(m, lead)
        if p(cand) == 0:
            return cand
    return None


def _isolate_squarefree(p: UniPoly, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals, ascending, for the real roots of squarefree `p`."""
    if p.degree <= 0:
        return []
    seq = sturm_sequence(p)
    bound = root_bound(p)
    pending = [(-bound, bound)]
    found: list[tuple[Fraction, Fraction]] = []
    while pending:
        lo, hi = pending.pop()
        count = sign_variations(seq, lo) - sign_variations(seq, hi)
        if count == 0:
            continue
        if count == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if p.sign_at(mid) == 0:
            found.append((mid, mid))
            eps = (hi - lo) / 4
            while True:
                a, b = mid - eps, mid + eps
                if (
                    p.sign_at(a) != 0
                    and p.sign_at(b) != 0
                    and sign_variations(seq, a) - sign_variations(seq, b) == 1
                ):
                    break
                eps /= 2
            pending.append((lo, a))
            pending.append((b, hi))
        else:
            pending.append((lo, mid))
            pending.append((mid, hi))

    out = []
    for lo, hi in found:
        if lo != hi:
            lo, hi = _refine_one(p, lo, hi, width)
        if lo != hi:
            lead = abs(int(p.primitive_integer().lead))
            # narrow enough that at most two multiples of 1/lead remain
            while (hi - lo) * lead > 1 and lo != hi:
                lo, hi = _refine_one(p, lo, hi, (hi - lo) / 2)
            if lo != hi:
                cand = _rational_candidate(p, lo, hi)
                if cand is not None:
                    lo = hi = cand
        out.append((lo, hi))
    out.sort()
    return out


def real_roots(p: UniPoly, width: Fraction = DEFAULT_WIDTH) -> list[RootInterval]:
    """Isolate all real roots of `p` with multiplicities.

    Rational roots come back as degenerate intervals; irrational ones as
    intervals narrower than `width`.  Intervals are pairwise disjoint and
    sorted.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    pieces: list[RootInterval] = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _isolate_squarefree(factor, width):
            pieces.append(RootInterval(lo, hi, mult, factor))
    return _separate(pieces)


def _separate(pieces: list[RootInterval]) -> list[RootInterval]:
    # roots of coprime factors are distinct, so refinement terminates
    pieces = sorted(pieces, key=lambda r: (r.lo, r.hi))
    changed = True
    while changed:
        changed = False
        for i in range(len(pieces) - 1):
            a, b = pieces[i], pieces[i + 1]
            if a.hi >= b.lo:
                pieces[i] = a.refine(a.width / 2) if not a.is_exact else a
                pieces[i + 1] = b.refine(b.width / 2) if not b.is_exact else b
                changed = True
        pieces.sort(key=lambda r: (r.lo, r.hi))
    return pieces


def gcd_and_real_roots(polys: Sequence[UniPoly]) -> tuple[UniPoly, list[RootInterval]]:
    """Exact gcd of `polys` and isolating intervals for its real roots."""
    if not polys:
        raise ValueError("empty polynomial list")
    g = gcd_many(polys)
    if g.is_zero():
        raise ValueError("all polynomials are zero")
    if g.degree == 0:
        return g, []
    return g, real_roots(g)


def fraction_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list[Fraction]]:
    """Sylvester matrix with coefficient rows written highest degree first."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(p.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(q.coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Determinant of the Sylvester matrix of `p` and `q`.

    Zero exactly when the two polynomials share a complex root.  A pair of
    constants gives the empty determinant 1.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    if p.degree + q.degree == 0:
        return Fraction(1)
    return fraction_det(sylvester_matrix(p, q))


def vanishes_at(p: UniPoly, root: RootInterval) -> bool:
    """Exact test p(λ₀) = 0 for the real algebraic number held by `root`."""
    if p.is_zero():
        return True
    if root.is_exact:
        return p(root.lo) == 0
    g = poly_gcd(p, root.poly)
    if g.degree < 1:
        return False
    seq = sturm_sequence(g)
    return sign_variations(seq, root.lo) - sign_variations(seq, root.hi) > 0
