"""Floquet matrices, dispersion polynomials and their exact invariants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import LAMBDA, LaurentPoly, RootInterval, UniPoly, determinant, gcd_and_real_roots
from .graph import EdgeOrbit, GraphError, PeriodicGraph, Vertex


class SymmetryError(ValueError):
    """The matrix violates H(z)^T = H(z^{-1})."""


class NotMinimallySparse(ValueError):
    def __init__(self, monomial: tuple[int, ...]):
        super().__init__(f"z-monomial {monomial} is not 1 or z_i^(±1)")
        self.monomial = monomial


@dataclass(frozen=True)
class FloquetMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def dimension(self) -> int:
        return self.entries[0][0].dim

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def symmetry_violations(self) -> list[tuple[int, int]]:
        n = self.size
        return [
            (i, j)
            for i in range(n)
            for j in range(i, n)
            if self.entries[i][j] != self.entries[j][i].invert_z()
        ]

    def characteristic(self) -> list[list[LaurentPoly]]:
        """H(z) - λ as nested lists."""
        lam = LaurentPoly.lam(self.dimension)
        return [
            [e - lam if i == j else e for j, e in enumerate(row)]
            for i, row in enumerate(self.entries)
        ]

    def substitute_sign(self, assignments) -> "FloquetMatrix":
        return FloquetMatrix(
            tuple(tuple(e.substitute_sign(assignments) for e in row) for row in self.entries),
            self.names,
        )

    def add_diagonal(self, p: LaurentPoly) -> "FloquetMatrix":
        return FloquetMatrix(
            tuple(
                tuple(e + p if i == j else e for j, e in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
            self.names,
        )

    def lift(self) -> "FloquetMatrix":
        """Same matrix viewed in one more Floquet variable."""
        def up(p: LaurentPoly) -> LaurentPoly:
            return LaurentPoly(p.dim + 1, {(z + (0,), k): c for (z, k), c in p.terms()})

        return FloquetMatrix(tuple(tuple(up(e) for e in row) for row in self.entries), self.names)

    def numeric(self) -> "NumericMatrix":
        return NumericMatrix(self)


class NumericMatrix:
    """Vectorised evaluation of a Floquet matrix at quasi-momenta k (z = e^{2πik})."""

    def __init__(self, h: FloquetMatrix):
        self.size = h.size
        self.dimension = h.dimension
        exps, coeffs, slots = [], [], []
        for i, row in enumerate(h.entries):
            for j, e in enumerate(row):
                for (zexp, k), c in e.terms():
                    if k:
                        raise ValueError("Floquet entries must not contain λ")
                    exps.append(zexp)
                    coeffs.append(float(c))
                    slots.append(i * self.size + j)
        n = self.size
        self._exps = np.array(exps, dtype=float).reshape(-1, self.dimension)
        self._coeffs = np.array(coeffs, dtype=complex)
        scatter = np.zeros((len(slots), n * n), dtype=complex)
        scatter[np.arange(len(slots)), slots] = 1.0
        self._scatter = scatter

    def __call__(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        batch = k.shape[:-1] if k.ndim > 1 else ()
        flat = k.reshape(-1, self.dimension)
        phases = np.exp(2j * np.pi * flat @ self._exps.T) * self._coeffs
        out = phases @ self._scatter
        return out.reshape(batch + (self.size, self.size))


def floquet_matrix(g: PeriodicGraph) -> FloquetMatrix:
    d, n = g.dimension, g.size
    if n == 0:
        raise GraphError("graph has no vertices")
    zero = (0,) * d
    acc: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]

    def add(i, j, zexp, c):
        key = (zexp, 0)
        acc[i][j][key] = acc[i][j].get(key, 0) + c

    for i, v in enumerate(g.vertices):
        add(i, i, zero, v.potential)
    for e in g.edges:
        neg = tuple(-s for s in e.shift)
        if e.u == e.v:
            if e.is_zero_shift_loop():
                raise GraphError("zero-shift loops are not allowed")
            add(e.u, e.u, e.shift, e.weight)
            add(e.u, e.u, neg, e.weight)
        else:
            add(e.u, e.v, e.shift, e.weight)
            add(e.v, e.u, neg, e.weight)
    entries = tuple(tuple(LaurentPoly(d, acc[i][j]) for j in range(n)) for i in range(n))
    return FloquetMatrix(entries, tuple(g.names))


def graph_from_matrix(h: FloquetMatrix) -> PeriodicGraph:
    """Labeled periodic graph whose Floquet matrix is `h`."""
    bad = h.symmetry_violations()
    if bad:
        i, j = bad[0]
        raise SymmetryError(f"entries ({i},{j}) and ({j},{i}) violate H(z)^T = H(1/z)")
    d, n = h.dimension, h.size
    zero = (0,) * d
    verts, edges = [], []
    for i in range(n):
        for (zexp, k), c in h[i, i].terms():
            if k:
                raise ValueError("Floquet entries must not contain λ")
        verts.append(Vertex(h.names[i], h[i, i].coefficient(zero)))
        for (zexp, _), c in h[i, i].terms():
            if zexp != zero and EdgeOrbit(i, i, zexp, c).canonical().shift == zexp:
                edges.append(EdgeOrbit(i, i, zexp, c))
        for j in range(i + 1, n):
            for (zexp, k), c in h[i, j].terms():
                if k:
                    raise ValueError("Floquet entries must not contain λ")
                edges.append(EdgeOrbit(i, j, zexp, c))
    return PeriodicGraph(d, tuple(verts), tuple(edges))


def dispersion_polynomial(h: FloquetMatrix) -> LaurentPoly:
    """det(H(z) - λ), unnormalised."""
    return determinant(h.characteristic())


def dispersion(g: PeriodicGraph) -> LaurentPoly:
    return dispersion_polynomial(floquet_matrix(g))


@dataclass(frozen=True)
class SparseForm:
    """D = h_0(λ) + Σ_i (z_i + z_i^{-1}) h_i(λ)."""

    h: tuple[UniPoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.h) - 1

    def reconstruct(self) -> LaurentPoly:
        d = self.dimension
        out = LaurentPoly.from_unipoly(self.h[0], d)
        for i in range(1, d + 1):
            out = out + LaurentPoly.zsym(i, d) * LaurentPoly.from_unipoly(self.h[i], d)
        return out

    def corner_polynomial(self, signs: Sequence[int]) -> UniPoly:
        out = self.h[0]
        for s, hi in zip(signs, self.h[1:]):
            out = out + hi * (2 * s)
        return out


def sparse_form(D: LaurentPoly) -> SparseForm:
    """Decompose a minimally sparse dispersion polynomial.

    Raises `NotMinimallySparse` carrying an offending z-monomial, or
    `SymmetryError` when D is not fixed by z -> 1/z.
    """
    if D != D.invert_z():
        raise SymmetryError("dispersion polynomial is not symmetric under z -> 1/z")
    d = D.dim
    coeffs = D.z_coefficients()
    h = [coeffs.get((0,) * d, UniPoly())] + [UniPoly()] * d
    for zexp in sorted(coeffs):
        nz = [(i, e) for i, e in enumerate(zexp) if e]
        if not nz:
            continue
        if len(nz) > 1 or abs(nz[0][1]) != 1:
            raise NotMinimallySparse(zexp)
        h[nz[0][0] + 1] = coeffs[zexp]
    return SparseForm(tuple(h))


def is_minimally_sparse(D: LaurentPoly) -> bool:
    try:
        sparse_form(D)
    except NotMinimallySparse:
        return False
    return True


def flat_band_gcd(D: LaurentPoly) -> UniPoly:
    """gcd over z-monomials m of the λ-coefficients c_m(λ)."""
    if D.is_zero():
        raise ValueError("dispersion polynomial is identically zero")
    g, _ = gcd_and_real_roots(list(D.z_coefficients().values()))
    return g


def flat_bands(D: LaurentPoly) -> list[RootInterval]:
    """Energies λ_0 with D(z, λ_0) ≡ 0 in z."""
    if D.is_zero():
        raise ValueError("dispersion polynomial is identically zero")
    _, roots = gcd_and_real_roots(list(D.z_coefficients().values()))
    return roots


# isthmus minors -------------------------------------------------------------


@dataclass(frozen=True)
class IsthmusMinors:
    """P_s: minor on indices < s; Q_s: minor on indices > s."""

    P: dict[int, LaurentPoly]
    Q: dict[int, LaurentPoly]


def _principal_minor(char: list[list[LaurentPoly]], positions: list[int], dim: int) -> LaurentPoly:
    if not positions:
        return LaurentPoly.constant(1, dim)
    return determinant([[char[i][j] for j in positions] for i in positions])


def isthmus_minors(g: PeriodicGraph) -> IsthmusMinors:
    lay = g.isthmus
    if lay is None:
        raise GraphError("graph carries no isthmus metadata")
    char = floquet_matrix(g).characteristic()
    d = g.dimension
    P, Q = {}, {}
    for s in lay.indices:
        p = lay.position(s)
        P[s] = _principal_minor(char, list(range(0, p)), d)
        Q[s] = _principal_minor(char, list(range(p + 1, g.size)), d)
    return IsthmusMinors(P, Q)


def isthmus_weights(g: PeriodicGraph) -> tuple[dict[int, Fraction], list[Fraction]]:
    """Path/cut weights c_r (r = 0..m, zero when absent) and periodic weights E_j."""
    lay = g.isthmus
    if lay is None:
        raise GraphError("graph carries no isthmus metadata")
    d = g.dimension
    zero = (0,) * d
    c = {}
    for r in range(0, lay.m + 1):
        lo, hi = lay.position(r), lay.position(r + 1)
        w = Fraction(0)
        if 0 <= lo and hi < g.size:
            for e in g.edges:
                if (e.u, e.v) == (lo, hi) and e.shift == zero:
                    w += e.weight
        c[r] = w
    E = []
    for j, r in enumerate(lay.f, start=1):
        p = lay.position(r)
        w = Fraction(0)
        for e in g.edges:
            if e.u == e.v == p and e.shift == tuple(1 if t == j - 1 else 0 for t in range(d)):
                w += e.weight
        E.append(w)
    return c, E


__all__ = [
    "FloquetMatrix",
    "IsthmusMinors",
    "NotMinimallySparse",
    "NumericMatrix",
    "SparseForm",
    "SymmetryError",
    "dispersion",
    "dispersion_polynomial",
    "flat_band_gcd",
    "flat_bands",
    "floquet_matrix",
    "graph_from_matrix",
    "is_minimally_sparse",
    "isthmus_minors",
    "isthmus_weights",
    "sparse_form",
    "LAMBDA",
]
