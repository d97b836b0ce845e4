"""Multivariate Laurent polynomials in z_1..z_d with an ordinary variable λ.

Terms are keyed by ``(z_exponents, lambda_degree)``.  The canonical order
used for iteration and serialization is lexicographic on
``(lambda_degree, z_exponents)``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .univariate import UniPoly

LAMBDA = "lambda"

Monomial = tuple[tuple[int, ...], int]
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients.

    Parameters
    ----------
    dim : int
        Number of Floquet variables d.
    terms : mapping
        ``{(zexp, k): coefficient}``; zero coefficients are dropped.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Monomial, Scalar] | None = None):
        if dim < 0:
            raise DimensionError("dimension must be nonnegative")
        self.dim = dim
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for (zexp, k), c in terms.items():
                zexp = tuple(int(e) for e in zexp)
                if len(zexp) != dim:
                    raise DimensionError(f"monomial {zexp} does not have length {dim}")
                if k < 0:
                    raise ValueError("λ-degree must be nonnegative")
                c = _as_fraction(c)
                if c:
                    clean[(zexp, int(k))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict[Monomial, Fraction]) -> "LaurentPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, c: Scalar, dim: int) -> "LaurentPoly":
        c = _as_fraction(c)
        return cls._raw(dim, {((0,) * dim, 0): c} if c else {})

    @classmethod
    def z(cls, i: int, dim: int, power: int = 1) -> "LaurentPoly":
        """The monomial z_i**power (1-based index)."""
        if not 1 <= i <= dim:
            raise DimensionError(f"variable index {i} outside 1..{dim}")
        exp = [0] * dim
        exp[i - 1] = power
        return cls._raw(dim, {(tuple(exp), 0): Fraction(1)})

    @classmethod
    def zsym(cls, i: int, dim: int) -> "LaurentPoly":
        """z_i + z_i^{-1}."""
        return cls.z(i, dim) + cls.z(i, dim, -1)

    @classmethod
    def monomial(cls, zexp: Iterable[int], k: int = 0, coeff: Scalar = 1) -> "LaurentPoly":
        zexp = tuple(zexp)
        return cls(len(zexp), {(zexp, k): coeff})

    @classmethod
    def lam(cls, dim: int, power: int = 1) -> "LaurentPoly":
        return cls._raw(dim, {((0,) * dim, power): Fraction(1)})

    @classmethod
    def from_unipoly(cls, p: UniPoly, dim: int) -> "LaurentPoly":
        zero = (0,) * dim
        return cls._raw(dim, {(zero, k): c for k, c in enumerate(p.coeffs) if c})

    # basic protocol -------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))

    def __iter__(self):
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, zexp: Iterable[int], k: int = 0) -> Fraction:
        return self._terms.get((tuple(zexp), k), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def lambda_degree(self) -> int:
        return max((k for (_, k) in self._terms), default=-1)

    def z_support(self) -> set[tuple[int, ...]]:
        return {zexp for (zexp, _) in self._terms}

    def is_constant_in_z(self) -> bool:
        zero = (0,) * self.dim
        return all(zexp == zero for (zexp, _) in self._terms)

    def is_constant(self) -> bool:
        return self.is_constant_in_z() and self.lambda_degree <= 0

    # ring operations ------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.dim)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LaurentPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if not other:
                return LaurentPoly.zero(self.dim)
            return LaurentPoly._raw(self.dim, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for (za, ka), ca in self._terms.items():
            for (zb, kb), cb in other._terms.items():
                m = (tuple(x + y for x, y in zip(za, zb)), ka + kb)
                out[m] = out.get(m, 0) + ca * cb
        return LaurentPoly._raw(self.dim, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.constant(1, self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structural operations ------------------------------------------------

    def invert_z(self) -> "LaurentPoly":
        """Substitute z -> z^{-1}."""
        return LaurentPoly._raw(
            self.dim,
            {(tuple(-e for e in zexp), k): c for (zexp, k), c in self._terms.items()},
        )

    def diff(self, var: int | str) -> "LaurentPoly":
        """Formal partial derivative in z_var (1-based) or in λ (``LAMBDA``)."""
        out: dict[Monomial, Fraction] = {}
        if var == LAMBDA:
            for (zexp, k), c in self._terms.items():
                if k:
                    out[(zexp, k - 1)] = c * k
            return LaurentPoly._raw(self.dim, out)
        if not isinstance(var, int) or not 1 <= var <= self.dim:
            raise DimensionError(f"invalid variable {var!r} for dimension {self.dim}")
        i = var - 1
        for (zexp, k), c in self._terms.items():
            e = zexp[i]
            if e:
                new = list(zexp)
                new[i] = e - 1
                out[(tuple(new), k)] = c * e
        return LaurentPoly._raw(self.dim, out)

    def substitute_sign(self, assignments: Mapping[int, int]) -> "LaurentPoly":
        """Set z_j = ±1 for the assigned indices and relabel the rest.

        Remaining variables keep their relative order and become z_1..z_r.
        """
        for j, s in assignments.items():
            if not 1 <= j <= self.dim:
                raise DimensionError(f"variable index {j} outside 1..{self.dim}")
            if s not in (1, -1):
                raise ValueError(f"sign for z_{j} must be ±1, got {s}")
        kept = [i for i in range(self.dim) if (i + 1) not in assignments]
        fixed = [(j - 1, s) for j, s in assignments.items()]
        out: dict[Monomial, Fraction] = {}
        for (zexp, k), c in self._terms.items():
            sign = 1
            for j, s in fixed:
                if s == -1 and zexp[j] % 2:
                    sign = -sign
            m = (tuple(zexp[i] for i in kept), k)
            v = out.get(m, 0) + sign * c
            out[m] = v
        return LaurentPoly._raw(len(kept), {m: c for m, c in out.items() if c})

    def substitute_lambda_shift(self, a: Scalar) -> "LaurentPoly":
        """Replace λ by μ - a(z_{d+1} + z_{d+1}^{-1}); μ takes the λ slot."""
        a = _as_fraction(a)
        if a == 0:
            raise ValueError("shift parameter a must be nonzero")
        d1 = self.dim + 1
        shift = LaurentPoly.lam(d1) - LaurentPoly.zsym(d1, d1) * a
        powers = [LaurentPoly.constant(1, d1)]
        out = LaurentPoly.zero(d1)
        for (zexp, k), c in self.terms():
            while len(powers) <= k:
                powers.append(powers[-1] * shift)
            lifted = LaurentPoly._raw(d1, {(zexp + (0,), 0): c})
            out = out + lifted * powers[k]
        return out

    def permute(self, perm: Iterable[int]) -> "LaurentPoly":
        """Relabel variables: new z_{i+1} is old z_{perm[i]+1} (0-based perm)."""
        perm = list(perm)
        if sorted(perm) != list(range(self.dim)):
            raise ValueError("not a permutation")
        return LaurentPoly._raw(
            self.dim,
            {(tuple(zexp[p] for p in perm), k): c for (zexp, k), c in self._terms.items()},
        )

    def z_coefficients(self) -> dict[tuple[int, ...], UniPoly]:
        """Regroup as Σ_m c_m(λ) z^m."""
        groups: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for (zexp, k), c in self._terms.items():
            groups.setdefault(zexp, {})[k] = c
        out = {}
        for zexp, coeffs in groups.items():
            deg = max(coeffs)
            out[zexp] = UniPoly([coeffs.get(i, 0) for i in range(deg + 1)])
        return out

    def to_unipoly(self) -> UniPoly:
        if not self.is_constant_in_z():
            raise ValueError("polynomial depends on z")
        return self.z_coefficients().get((0,) * self.dim, UniPoly())

    def evaluate(self, z: Iterable, lam=0):
        """Evaluate at a point; exact for rational input, numeric otherwise."""
        z = list(z)
        if len(z) != self.dim:
            raise DimensionError("point has wrong dimension")
        exact = all(isinstance(v, (int, Fraction)) for v in z + [lam])
        if exact:
            z = [Fraction(v) for v in z]
        total = Fraction(0) if exact else 0j
        for (zexp, k), c in self._terms.items():
            term = c if exact else complex(c)
            for v, e in zip(z, zexp):
                if e:
                    term = term * (v ** e)
            if k:
                term = term * lam**k
            total = total + term
        return total

    # serialization --------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text ``c * z1^e1 ... zd^ed * L^k`` joined by `` + ``."""
        if not self._terms:
            return "0"
        parts = []
        for (zexp, k), c in self.terms():
            factors = [str(c)]
            factors += [f"z{i + 1}^{e}" for i, e in enumerate(zexp)]
            factors.append(f"L^{k}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, dim: int) -> "LaurentPoly":
        """Inverse of `to_text`."""
        text = text.strip()
        if text == "0":
            return cls.zero(dim)
        terms: dict[Monomial, Fraction] = {}
        for chunk in text.split(" + "):
            factors = [f.strip() for f in chunk.split("*")]
            coeff = Fraction(factors[0])
            zexp = [0] * dim
            k = 0
            for f in factors[1:]:
                m = re.fullmatch(r"z(\d+)\^(-?\d+)", f)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= dim:
                        raise DimensionError(f"variable z{i} outside dimension {dim}")
                    zexp[i - 1] += int(m.group(2))
                    continue
                m = re.fullmatch(r"L\^(\d+)", f)
                if m:
                    k += int(m.group(1))
                    continue
                raise ValueError(f"cannot parse factor {f!r}")
            key = (tuple(zexp), k)
            terms[key] = terms.get(key, 0) + coeff
        return cls(dim, terms)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, ((zexp, k), c) in enumerate(sorted(self.terms(), key=lambda t: (-t[0][1], t[0][0]))):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [f"z_{{{i + 1}}}" + (f"^{{{e}}}" if e != 1 else "") for i, e in enumerate(zexp) if e]
            if k:
                factors.append(r"\lambda" + (f"^{{{k}}}" if k != 1 else ""))
            if mag.denominator != 1:
                cs = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                cs = str(mag.numerator)
            body = " ".join(factors)
            if body and mag == 1:
                cs = ""
            term = f"{cs} {body}".strip()
            if idx == 0:
                out.append(("-" if sign == "-" else "") + term)
            else:
                out.append(f" {sign} {term}")
        return "".join(out)
