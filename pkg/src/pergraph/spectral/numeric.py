"""Floating-point evaluation of D(z, λ) on the torus z = exp(2πik)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra import LaurentPoly

TWO_PI = 2 * np.pi


@dataclass
class Evaluation:
    """D and its derivatives in quasi-momentum coordinates at N points.

    ``grad`` is ∂D/∂k (N, d); ``hess`` is ∂²D/∂k∂k (N, d, d); ``lam_grad``
    is ∂²D/∂k∂λ (N, d).  All values are real on the torus.
    """

    value: np.ndarray
    grad: np.ndarray
    d_lam: np.ndarray
    hess: np.ndarray | None = None
    lam_grad: np.ndarray | None = None
    d_lam2: np.ndarray | None = None


class NumericPoly:
    def __init__(self, D: LaurentPoly):
        self.dimension = D.dim
        terms = D.terms()
        self.exps = np.array([z for (z, _), _ in terms], dtype=float).reshape(-1, D.dim)
        self.deg = np.array([k for (_, k), _ in terms], dtype=int)
        self.coeffs = np.array([float(c) for _, c in terms], dtype=float)
        self.lambda_degree = int(self.deg.max(initial=0))

    def scale(self, lam) -> np.ndarray:
        """Natural magnitude Σ|c||λ|^k used to make residual tests relative."""
        lam = np.abs(np.asarray(lam, dtype=float))
        return np.maximum(1.0, (np.abs(self.coeffs) * lam[..., None] ** self.deg).sum(axis=-1))

    def _phases(self, k: np.ndarray) -> np.ndarray:
        return np.exp(1j * TWO_PI * (k @ self.exps.T))

    def evaluate(self, k, lam, order: int = 1) -> Evaluation:
        k = np.atleast_2d(np.asarray(k, dtype=float))
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        zp = self._phases(k) * self.coeffs
        lp = lam[:, None] ** self.deg
        deg = self.deg
        dlp = np.where(deg > 0, deg * lam[:, None] ** np.maximum(deg - 1, 0), 0.0)
        t = zp * lp
        ik = 1j * TWO_PI * self.exps  # (T, d)
        out = Evaluation(
            value=t.sum(axis=1).real,
            grad=(t @ ik).real,
            d_lam=(zp * dlp).sum(axis=1).real,
        )
        if order >= 2:
            out.hess = np.einsum("nt,ti,tj->nij", t, ik, ik).real
            out.lam_grad = ((zp * dlp) @ ik).real
            d2 = np.where(deg > 1, deg * (deg - 1) * lam[:, None] ** np.maximum(deg - 2, 0), 0.0)
            out.d_lam2 = (zp * d2).sum(axis=1).real
        return out

    def lambda_coefficients(self, k) -> np.ndarray:
        """Coefficients of D(exp(2πik), ·) as a polynomial in λ, lowest first; shape (N, deg+1)."""
        k = np.atleast_2d(np.asarray(k, dtype=float))
        zp = self._phases(k) * self.coeffs
        out = np.zeros((k.shape[0], self.lambda_degree + 1), dtype=complex)
        for j in range(self.lambda_degree + 1):
            out[:, j] = zp[:, self.deg == j].sum(axis=1)
        return out

    def roots(self, k) -> np.ndarray:
        """Sorted real parts of the λ-roots at each k; an eigen-solver-free band oracle."""
        c = self.lambda_coefficients(k).real
        return np.array([np.sort(np.roots(row[::-1]).real) for row in c])
