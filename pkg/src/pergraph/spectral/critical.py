"""Critical points of the dispersion relation.

Exact corner spectra and corner Hessians, numeric CPE residuals, Newton
refinement in quasi-momentum coordinates, the grid-seeded Morse census and
the exact search for non-corner critical families of minimally sparse
graphs.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ..algebra import LaurentPoly, RootInterval, UniPoly, gcd_and_real_roots, real_roots, vanishes_at
from ..floquet import FloquetMatrix, SparseForm, dispersion_polynomial, flat_bands, floquet_matrix
from ..graph import PeriodicGraph
from .bands import band_values, default_resolution, grid_points
from .numeric import TWO_PI, NumericPoly


class ConvergenceError(RuntimeError):
    """Newton iteration failed to reach the residual tolerance."""


class NonSmoothPoint(ValueError):
    """∂D/∂λ vanishes: two band sheets touch and the band Hessian is undefined."""


class FlatBandError(ValueError):
    def __init__(self, roots: list[RootInterval]):
        super().__init__("flat band at " + ", ".join(str(r) for r in roots))
        self.roots = roots


class ToleranceFailure(RuntimeError):
    """An internal numeric cross-check exceeded its tolerance."""


@dataclass(frozen=True)
class Tolerances:
    eigen: float = 1e-13
    hermitian: float = 1e-12
    residual: float = 1e-10
    singular: float = 1e-6
    dedup: float = 1e-6
    corner: float = 1e-8
    band: float = 1e-8
    fd_step: float = 1e-4
    fd_agreement: float = 1e-4
    max_iter: int = 50

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


DEFAULT_TOL = Tolerances()


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, PeriodicGraph):
        x = floquet_matrix(x)
    if isinstance(x, FloquetMatrix):
        return dispersion_polynomial(x)
    raise TypeError(f"expected a graph, Floquet matrix or dispersion polynomial, got {type(x).__name__}")


def _as_numeric(x) -> NumericPoly:
    return x if isinstance(x, NumericPoly) else NumericPoly(_as_poly(x))


def torus_distance(a, b) -> np.ndarray:
    diff = (np.asarray(a, dtype=float) - np.asarray(b, dtype=float) + 0.5) % 1.0 - 0.5
    return np.max(np.abs(diff), axis=-1)


# corners ------------------------------------------------------------------


@dataclass(frozen=True)
class CornerPoint:
    signs: tuple[int, ...]

    @property
    def k(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(0) if s == 1 else Fraction(1, 2) for s in self.signs)

    @property
    def assignments(self) -> dict[int, int]:
        return {i: s for i, s in enumerate(self.signs, start=1)}

    def __str__(self) -> str:
        return "(" + ",".join(f"{s:+d}" for s in self.signs) + ")"


def all_corners(d: int) -> list[CornerPoint]:
    return [CornerPoint(s) for s in itertools.product((1, -1), repeat=d)]


def corner_of(k, tol: float = DEFAULT_TOL.corner) -> CornerPoint | None:
    """The corner within `tol` of quasi-momentum `k`, if any."""
    signs = []
    for x in np.asarray(k, dtype=float):
        if torus_distance([x], [0.0]) <= tol:
            signs.append(1)
        elif torus_distance([x], [0.5]) <= tol:
            signs.append(-1)
        else:
            return None
    return CornerPoint(tuple(signs))


def corner_polynomial(D: LaurentPoly, corner: CornerPoint) -> UniPoly:
    """D(x, λ) at a corner x as a polynomial in λ."""
    return D.substitute_sign(corner.assignments).to_unipoly()


@dataclass(frozen=True)
class CornerPair:
    corner: CornerPoint
    energy: RootInterval

    @property
    def k(self) -> tuple[Fraction, ...]:
        return self.corner.k

    def __float__(self) -> float:
        return float(self.energy)


def corner_spectrum(g) -> list[CornerPair]:
    """All 2^d|W| corner critical pairs, repeated according to multiplicity."""
    D = _as_poly(g)
    out = []
    deg = D.lambda_degree
    for c in all_corners(D.dim):
        p = corner_polynomial(D, c)
        roots = real_roots(p)
        if sum(r.multiplicity for r in roots) != deg:
            raise ToleranceFailure(f"corner {c}: characteristic polynomial has non-real roots")
        for r in roots:
            out.extend([CornerPair(c, r)] * r.multiplicity)
    return out


def _refined_rational(root: RootInterval) -> Fraction:
    if root.is_exact:
        return root.lo
    return root.refine(Fraction(1, 2**60)).midpoint()


def cpe_residual(D, k, lam) -> np.ndarray:
    """(|D|, |∂D/∂z_1|, …, |∂D/∂z_d|) at z = exp(2πik).

    When every k_i is an exact 0 or 1/2 and λ is exact (a rational or a
    `RootInterval`), the evaluation is carried out in rationals, with an
    irrational λ₀ replaced by a rational within 2^-60 of it.
    """
    D = _as_poly(D)
    if len(k) != D.dim:
        raise ValueError("quasi-momentum has the wrong length")
    exact_k = all(isinstance(x, (int, Fraction)) and (2 * Fraction(x)).denominator == 1 for x in k)
    exact_lam = isinstance(lam, (int, Fraction, RootInterval))
    if exact_k and exact_lam:
        z = [Fraction(1) if Fraction(x) % 1 == 0 else Fraction(-1) for x in k]
        lv = _refined_rational(lam) if isinstance(lam, RootInterval) else Fraction(lam)
        vals = [D.evaluate(z, lv)] + [D.diff(i).evaluate(z, lv) for i in range(1, D.dim + 1)]
        return np.array([abs(float(v)) for v in vals])
    num = NumericPoly(D)
    ev = num.evaluate(np.asarray(k, dtype=float), float(lam), order=1)
    return np.concatenate([np.abs(ev.value), np.abs(ev.grad[0]) / TWO_PI])


@dataclass(frozen=True)
class CornerHessian:
    """Exact Hessian data of the band through a corner pair.

    In k-coordinates the band Hessian is 4π² M(λ₀)/∂_λD(x, λ₀) with
    M_ij = Σ c a_i a_j x^a λ^k over the terms c z^a λ^k of D.
    """

    pair: CornerPair
    off_diagonal_zero: bool
    diagonal_nonzero: tuple[bool, ...]
    smooth: bool
    matrix: np.ndarray | None = field(compare=False, default=None)

    @property
    def diagonal(self) -> bool:
        return self.off_diagonal_zero

    @property
    def nonsingular(self) -> bool:
        if not self.smooth:
            return False
        if self.off_diagonal_zero:
            return all(self.diagonal_nonzero)
        ev = np.linalg.eigvalsh(self.matrix)
        return bool(np.min(np.abs(ev)) > DEFAULT_TOL.singular * max(np.max(np.abs(ev)), 1e-300))


def corner_hessian_polys(D: LaurentPoly, corner: CornerPoint) -> list[list[UniPoly]]:
    d = D.dim
    acc = [[{} for _ in range(d)] for _ in range(d)]
    for (zexp, k), c in D.terms():
        sign = 1
        for a, s in zip(zexp, corner.signs):
            if s == -1 and a % 2:
                sign = -sign
        for i in range(d):
            for j in range(d):
                if zexp[i] and zexp[j]:
                    acc[i][j][k] = acc[i][j].get(k, 0) + sign * c * zexp[i] * zexp[j]
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            m = acc[i][j]
            deg = max(m, default=-1)
            row.append(UniPoly([m.get(t, 0) for t in range(deg + 1)]))
        out.append(row)
    return out


def corner_hessian(D, pair: CornerPair) -> CornerHessian:
    D = _as_poly(D)
    d = D.dim
    M = corner_hessian_polys(D, pair.corner)
    p = corner_polynomial(D, pair.corner)
    root = pair.energy
    smooth = root.multiplicity == 1
    off_zero = all(vanishes_at(M[i][j], root) for i in range(d) for j in range(d) if i != j)
    diag = tuple(not vanishes_at(M[i][i], root) for i in range(d))
    matrix = None
    if smooth:
        lv = _refined_rational(root)
        dl = float(p.derivative()(lv))
        matrix = np.array([[4 * np.pi**2 * float(M[i][j](lv)) / dl for j in range(d)] for i in range(d)])
    return CornerHessian(pair, off_zero, diag, smooth, matrix)


# Newton -------------------------------------------------------------------


@dataclass
class NewtonResult:
    k: np.ndarray
    lam: np.ndarray
    residual: np.ndarray
    converged: np.ndarray
    singular_values: np.ndarray
    iterations: int


def _jacobian(ev) -> np.ndarray:
    n, d = ev.grad.shape
    J = np.empty((n, d + 1, d + 1))
    J[:, 0, :d] = ev.grad
    J[:, 0, d] = ev.d_lam
    J[:, 1:, :d] = ev.hess
    J[:, 1:, d] = ev.lam_grad
    return J


def _relative_residual(num: NumericPoly, ev, lam) -> np.ndarray:
    raw = np.maximum(np.abs(ev.value), np.max(np.abs(ev.grad), axis=1, initial=0.0) / TWO_PI)
    return raw / num.scale(lam)


def newton_batch(num: NumericPoly, k, lam, tol: Tolerances = DEFAULT_TOL) -> NewtonResult:
    """Newton on (D, ∂D/∂k_1, …, ∂D/∂k_d) = 0 for many starts at once.

    The residual test is relative: max(|D|, |∂D/∂z_i|) ≤ tol·max(1, Σ|c||λ|^k).
    Steps use a pseudo-inverse so rank-deficient Jacobians (critical
    curves) still converge onto the solution set; steps are clamped to
    0.05 in k and 0.5(1 + |λ|) in λ.
    """
    K = np.array(np.atleast_2d(k), dtype=float)
    L = np.array(np.atleast_1d(lam), dtype=float)
    d = K.shape[1]
    it = 0
    while True:
        ev = num.evaluate(K, L, order=2)
        res = _relative_residual(num, ev, L)
        active = ~(res <= tol.residual)
        if not active.any() or it >= tol.max_iter:
            break
        J = _jacobian(ev)[active]
        F = np.concatenate([ev.value[:, None], ev.grad], axis=1)[active]
        step = -np.einsum("nij,nj->ni", np.linalg.pinv(J, rcond=1e-10), F)
        dk = np.max(np.abs(step[:, :d]), axis=1)
        dl = np.abs(step[:, d])
        limit = np.minimum(1.0, np.minimum(0.05 / np.maximum(dk, 1e-300), 0.5 * (1 + np.abs(L[active])) / np.maximum(dl, 1e-300)))
        step *= limit[:, None]
        K[active] += step[:, :d]
        L[active] += step[:, d]
        it += 1
    sv = np.linalg.svd(_jacobian(ev), compute_uv=False)
    conv = res <= tol.residual
    return NewtonResult(K % 1.0, L, res, conv, sv, it)


def newton_refine(D, k, lam, tol: Tolerances = DEFAULT_TOL) -> "CriticalPoint":
    """Refine one start to a solution of the CPE; raises `ConvergenceError` on divergence."""
    num = _as_numeric(D)
    r = newton_batch(num, np.asarray(k, dtype=float)[None, :], [float(lam)], tol)
    if not r.converged[0]:
        raise ConvergenceError(f"no convergence after {r.iterations} iterations (residual {r.residual[0]:.3g})")
    sv = r.singular_values[0]
    kk = r.k[0]
    raw = cpe_residual(_as_poly(D), kk, r.lam[0]) if isinstance(D, LaurentPoly) else None
    return CriticalPoint(
        k=tuple(float(x) for x in kk),
        energy=float(r.lam[0]),
        residual=float(np.max(raw)) if raw is not None else float(r.residual[0]),
        jacobian_sv=tuple(float(x) for x in sv),
        singular_jacobian=bool(sv[-1] <= tol.singular * max(sv[0], 1e-300)),
        corner=corner_of(kk, tol.corner),
    )


# Hessian ------------------------------------------------------------------


@dataclass(frozen=True)
class HessianResult:
    matrix: np.ndarray
    eigenvalues: tuple[float, ...]
    band: int
    fd_matrix: np.ndarray
    fd_deviation: float

    def degenerate(self, tol: float = DEFAULT_TOL.singular) -> bool:
        ev = np.abs(self.eigenvalues)
        top = float(np.max(ev))
        return top == 0.0 or float(np.min(ev)) < tol * top


def _fd_hessian(f: Callable[[np.ndarray], np.ndarray], k: np.ndarray, h: float) -> np.ndarray:
    d = len(k)
    eye = np.eye(d) * h
    pts = [k]
    for i in range(d):
        pts += [k + eye[i], k - eye[i]]
    for i in range(d):
        for j in range(i + 1, d):
            pts += [k + eye[i] + eye[j], k + eye[i] - eye[j], k - eye[i] + eye[j], k - eye[i] - eye[j]]
    vals = f(np.array(pts))
    f0 = vals[0]
    H = np.empty((d, d))
    for i in range(d):
        H[i, i] = (vals[1 + 2 * i] - 2 * f0 + vals[2 + 2 * i]) / h**2
    pos = 1 + 2 * d
    for i in range(d):
        for j in range(i + 1, d):
            a, b, c, e = vals[pos : pos + 4]
            H[i, j] = H[j, i] = (a - b - c + e) / (4 * h**2)
            pos += 4
    return H


def hessian_at(
    D,
    k,
    lam: float,
    band: int | None = None,
    band_values_fn: Callable[[np.ndarray], np.ndarray] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> HessianResult:
    """Hessian in k of the band function through a critical point.

    Uses λ_ij = -D_{k_i k_j}/D_λ and cross-checks it with central second
    differences of the sorted band values (`band_values_fn`, defaulting to
    the roots of D in λ).  `band` is 1-based; when omitted the band whose
    value is closest to `lam` is used.
    """
    num = _as_numeric(D)
    k = np.asarray(k, dtype=float)
    ev = num.evaluate(k, lam, order=2)
    if abs(ev.d_lam[0]) <= 1e-9 * num.scale(np.atleast_1d(lam))[0]:
        raise NonSmoothPoint(f"∂D/∂λ vanishes at k={k.tolist()}, λ={lam}")
    H = -ev.hess[0] / ev.d_lam[0]
    H = 0.5 * (H + H.T)
    fn = band_values_fn or num.roots
    if band is None:
        band = int(np.argmin(np.abs(fn(k[None, :])[0] - lam))) + 1
    fd = _fd_hessian(lambda pts: fn(pts)[:, band - 1], k, tol.fd_step)
    dev = float(np.max(np.abs(H - fd)) / max(1.0, float(np.max(np.abs(H)))))
    return HessianResult(H, tuple(float(x) for x in np.linalg.eigvalsh(H)), band, fd, dev)


# census -------------------------------------------------------------------


@dataclass
class CriticalPoint:
    k: tuple[float, ...]
    energy: float
    band: int | None = None
    residual: float = 0.0
    hessian: tuple[float, ...] | None = None
    degenerate: bool = False
    corner: CornerPoint | None = None
    smooth: bool = True
    jacobian_sv: tuple[float, ...] = ()
    singular_jacobian: bool = False
    fd_deviation: float | None = None
    extends: bool = False

    def record(self) -> dict:
        return {
            "k": [round(x, 12) for x in self.k],
            "energy": round(self.energy, 12),
            "band": self.band,
            "residual": float(f"{self.residual:.3e}"),
            "hessian": None if self.hessian is None else [float(f"{x:.10g}") for x in self.hessian],
            "degenerate": self.degenerate,
            "corner": None if self.corner is None else list(self.corner.signs),
            "smooth": self.smooth,
            "jacobianMinSingularValue": float(f"{self.jacobian_sv[-1]:.3e}") if self.jacobian_sv else None,
            "nonIsolated": self.extends,
        }


@dataclass
class BandReport:
    index: int
    points: list[CriticalPoint]
    dimension: int

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def degenerate_count(self) -> int:
        return sum(p.degenerate for p in self.points)

    @property
    def non_isolated(self) -> bool:
        return any(p.extends for p in self.points)

    @property
    def perfect_morse(self) -> bool:
        return self.count == 2**self.dimension and self.degenerate_count == 0 and not self.non_isolated


@dataclass
class MorseReport:
    dimension: int
    size: int
    resolution: int
    bands: list[BandReport]
    nonsmooth: list[CriticalPoint]
    seeds: int
    unconverged: int
    max_fd_deviation: float

    @property
    def points(self) -> list[CriticalPoint]:
        return [p for b in self.bands for p in b.points]

    @property
    def total_count(self) -> int:
        return len(self.points) + len(self.nonsmooth)

    @property
    def all_at_corners(self) -> bool:
        return all(p.corner is not None for p in self.points + self.nonsmooth)

    @property
    def degenerate_count(self) -> int:
        return sum(b.degenerate_count for b in self.bands)

    def summary(self) -> str:
        parts = [f"{self.total_count} critical points"]
        parts.append("all corners" if self.all_at_corners else "some away from corners")
        perfect = [b.index for b in self.bands if b.perfect_morse]
        if len(perfect) == len(self.bands):
            parts.append(f"all {len(self.bands)} bands perfect Morse" if len(self.bands) != 2 else "both bands perfect Morse")
        else:
            parts.append(f"perfect Morse bands: {perfect or 'none'}")
        lines = [b.index for b in self.bands if b.non_isolated]
        if lines:
            parts.append(f"non-isolated critical set on band(s) {lines}")
        if self.nonsmooth:
            parts.append(f"{len(self.nonsmooth)} non-smooth candidates")
        return ", ".join(parts)

    def record(self) -> dict:
        return {
            "dimension": self.dimension,
            "grid": self.resolution,
            "totalCount": self.total_count,
            "allAtCorners": self.all_at_corners,
            "seeds": self.seeds,
            "unconverged": self.unconverged,
            "maxFiniteDifferenceDeviation": float(f"{self.max_fd_deviation:.3e}"),
            "bands": [
                {
                    "band": b.index,
                    "count": b.count,
                    "perfectMorse": b.perfect_morse,
                    "nonIsolated": b.non_isolated,
                    "degenerate": b.degenerate_count,
                    "points": [p.record() for p in b.points],
                }
                for b in self.bands
            ],
            "nonSmooth": [p.record() for p in self.nonsmooth],
        }


def _cell_candidates(grad: np.ndarray, n: int, d: int) -> np.ndarray:
    """Cells of the n^d grid on which every gradient component can vanish.

    `grad` has shape (n,)*d + (d,); entries are NaN where the band is not
    smooth.  A component qualifies on a cell when its values at the 2^d
    cell corners take both signs or come within noise of zero.
    """
    finite = np.nan_to_num(np.abs(grad), nan=0.0)
    thr = 1e-9 * max(1.0, float(finite.max(initial=0.0)))
    ok = np.ones((n,) * d, dtype=bool)
    for i in range(d):
        gi = grad[..., i]
        pos = np.zeros((n,) * d, dtype=bool)
        neg = np.zeros((n,) * d, dtype=bool)
        for delta in itertools.product((0, 1), repeat=d):
            shifted = gi
            for ax, s in enumerate(delta):
                if s:
                    shifted = np.roll(shifted, -1, axis=ax)
            bad = np.isnan(shifted)
            small = np.abs(np.nan_to_num(shifted)) <= thr
            pos |= bad | small | (shifted > thr)
            neg |= bad | small | (shifted < -thr)
        ok &= pos & neg
    return ok


def _dedup(k: np.ndarray, lam: np.ndarray, tol: float) -> list[int]:
    keep: list[int] = []
    for i in np.argsort(lam, kind="stable"):
        if keep:
            kk = k[keep]
            close = (torus_distance(kk, k[i]) < tol) & (np.abs(lam[keep] - lam[i]) < tol * max(1.0, abs(lam[i])))
            if close.any():
                continue
        keep.append(int(i))
    return sorted(keep, key=lambda i: (round(lam[i], 9), tuple(np.round(k[i], 9))))


def _extends(num: NumericPoly, k, lam, direction, tol: Tolerances, step: float = 1e-2) -> bool:
    """Does the critical set continue from (k, λ) along `direction`?"""
    starts = np.array([k + step * direction, k - step * direction])
    r = newton_batch(num, starts, [lam, lam], tol)
    for kk, ll, ok in zip(r.k, r.lam, r.converged):
        if ok and torus_distance(kk, k) > step / 2 and abs(ll - lam) <= tol.dedup * max(1.0, abs(lam)):
            return True
    return False


def morse_census(
    g,
    n: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
    threads: int | None = None,
) -> MorseReport:
    """Locate and classify the critical points of every band function.

    Raises `FlatBandError` when the dispersion polynomial has a flat band.
    A degenerate point is marked non-isolated when Newton restarted a short
    step along the Hessian kernel lands on a different solution at the same
    energy.
    """
    h = g if isinstance(g, FloquetMatrix) else floquet_matrix(g)
    D = dispersion_polynomial(h)
    fb = flat_bands(D)
    if fb:
        raise FlatBandError(fb)
    d, size = h.dimension, h.size
    n = default_resolution(d) if n is None else n
    if n < 4:
        raise ValueError("grid resolution must be at least 4")
    num = NumericPoly(D)
    nm = h.numeric()

    def bands_fn(pts):
        return band_values(nm, pts, tol=tol.eigen)

    K = grid_points(n, d)
    vals = band_values(nm, K, tol=tol.eigen, threads=threads)
    seeds_k, seeds_l = [], []
    centers = (grid_points(n, d) + 0.5 / n)
    for b in range(size):
        ev = num.evaluate(K, vals[:, b], order=1)
        smooth = np.abs(ev.d_lam) > 1e-9 * num.scale(vals[:, b])
        grad = np.where(smooth[:, None], -ev.grad / np.where(smooth, ev.d_lam, 1.0)[:, None], np.nan)
        cand = _cell_candidates(grad.reshape((n,) * d + (d,)), n, d).reshape(-1)
        lam_cells = np.zeros(n**d)
        grid_vals = vals[:, b].reshape((n,) * d)
        for delta in itertools.product((0, 1), repeat=d):
            shifted = grid_vals
            for ax, s in enumerate(delta):
                if s:
                    shifted = np.roll(shifted, -1, axis=ax)
            lam_cells += shifted.reshape(-1)
        lam_cells /= 2**d
        seeds_k.append(centers[cand])
        seeds_l.append(lam_cells[cand])
    SK = np.concatenate(seeds_k)
    SL = np.concatenate(seeds_l)

    if threads and threads > 1 and len(SK) > 1:
        parts_k = np.array_split(SK, threads)
        parts_l = np.array_split(SL, threads)
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda a: newton_batch(num, a[0], a[1], tol), zip(parts_k, parts_l)))
        res_k = np.concatenate([r.k for r in results])
        res_l = np.concatenate([r.lam for r in results])
        conv = np.concatenate([r.converged for r in results])
        svs = np.concatenate([r.singular_values for r in results])
    else:
        r = newton_batch(num, SK, SL, tol) if len(SK) else None
        res_k = r.k if r else np.zeros((0, d))
        res_l = r.lam if r else np.zeros(0)
        conv = r.converged if r else np.zeros(0, dtype=bool)
        svs = r.singular_values if r else np.zeros((0, d + 1))
    ck, cl, csv = res_k[conv], res_l[conv], svs[conv]
    keep = _dedup(ck, cl, tol.dedup)

    per_band: dict[int, list[CriticalPoint]] = {b: [] for b in range(1, size + 1)}
    nonsmooth: list[CriticalPoint] = []
    worst_fd = 0.0
    for i in keep:
        kk, ll, sv = ck[i], float(cl[i]), csv[i]
        raw = float(np.max(cpe_residual(D, kk, ll)))
        ev_here = bands_fn(kk[None, :])[0]
        near = np.abs(ev_here - ll)
        btol = max(tol.band, 1e-6) * max(1.0, abs(ll))
        match = np.flatnonzero(near <= btol)
        b = int(np.argmin(near)) + 1
        touching = np.flatnonzero(np.abs(ev_here - ev_here[b - 1]) <= tol.band * max(1.0, abs(ll)))
        cp = CriticalPoint(
            k=tuple(float(x) for x in kk),
            energy=ll,
            band=b,
            residual=raw,
            corner=corner_of(kk, tol.corner),
            jacobian_sv=tuple(float(x) for x in sv),
            singular_jacobian=bool(sv[-1] <= tol.singular * max(sv[0], 1e-300)),
        )
        if len(match) == 0:
            raise ToleranceFailure(f"critical value {ll} matches no eigenvalue at k={kk.tolist()}")
        if len(touching) > 1:
            cp.smooth = False
            nonsmooth.append(cp)
            continue
        try:
            hr = hessian_at(num, kk, ll, band=b, band_values_fn=bands_fn, tol=tol)
        except NonSmoothPoint:
            cp.smooth = False
            nonsmooth.append(cp)
            continue
        cp.hessian = hr.eigenvalues
        cp.degenerate = hr.degenerate(tol.singular)
        cp.fd_deviation = hr.fd_deviation
        worst_fd = max(worst_fd, hr.fd_deviation)
        if cp.degenerate:
            w, v = np.linalg.eigh(hr.matrix)
            u = v[:, int(np.argmin(np.abs(w)))]
            cp.extends = _extends(num, kk, ll, u, tol)
        per_band[b].append(cp)
    bands = [BandReport(b, per_band[b], d) for b in range(1, size + 1)]
    return MorseReport(d, size, n, bands, nonsmooth, len(SK), int((~conv).sum()), worst_fd)


# exact search for non-corner critical families ---------------------------


@dataclass(frozen=True)
class NonCornerWitness:
    """A family {z_j = ε_j off I, z_I free, λ = λ₀} of critical points."""

    kept: tuple[int, ...]
    signs: tuple[tuple[int, int], ...]
    energy: RootInterval
    gcd: UniPoly

    def record(self) -> dict:
        return {
            "I": list(self.kept),
            "signs": {f"z{j}": s for j, s in self.signs},
            "lambda0": str(self.energy),
            "gcd": str(self.gcd),
        }

    def sample_k(self, free: float = 0.123456789) -> np.ndarray:
        d = len(self.kept) + len(self.signs)
        k = np.full(d, free)
        for j, s in self.signs:
            k[j - 1] = 0.0 if s == 1 else 0.5
        return k


def algebraic_non_corner_search(sf: SparseForm) -> list[NonCornerWitness]:
    """Exact witnesses for positive-dimensional critical families.

    For each nonempty proper I ⊆ [d] and signs ε off I, the common real
    roots of {h_i : i ∈ I} ∪ {h_0 + Σ_{j∉I} 2ε_j h_j} are found as the real
    roots of their gcd.
    """
    d = sf.dimension
    out = []
    for r in range(1, d):
        for kept in itertools.combinations(range(1, d + 1), r):
            rest = [j for j in range(1, d + 1) if j not in kept]
            for signs in itertools.product((1, -1), repeat=len(rest)):
                balance = sf.h[0]
                for j, s in zip(rest, signs):
                    balance = balance + sf.h[j] * (2 * s)
                polys = [sf.h[i] for i in kept] + [balance]
                if all(p.is_zero() for p in polys):
                    continue
                g, roots = gcd_and_real_roots(polys)
                for root in roots:
                    out.append(NonCornerWitness(kept, tuple(zip(rest, signs)), root, g))
    return out


def witness_bands(h, w: NonCornerWitness, tol: float = 1e-8) -> list[int]:
    """1-based bands whose value at a generic point of the family equals λ₀."""
    vals = band_values(h, w.sample_k()[None, :])[0]
    lam0 = float(w.energy)
    return [i + 1 for i, v in enumerate(vals) if abs(v - lam0) <= tol * max(1.0, abs(lam0))]
