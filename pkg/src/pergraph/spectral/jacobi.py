"""Cyclic Jacobi eigenvalues for stacks of complex Hermitian matrices."""
from __future__ import annotations

import numpy as np


class HermitianError(ValueError):
    """Input deviates from Hermitian beyond the allowed relative tolerance."""


class JacobiConvergenceError(RuntimeError):
    pass


def hermitian_deviation(a: np.ndarray) -> float:
    """max |A - A^H| relative to max(1, max |A|)."""
    dev = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2))), initial=0.0)
    return float(dev / max(1.0, float(np.max(np.abs(a), initial=0.0))))


def jacobi_eigvalsh(
    a,
    tol: float = 1e-13,
    max_sweeps: int = 60,
    hermitian_tol: float = 1e-12,
) -> np.ndarray:
    """Ascending eigenvalues of one or many Hermitian matrices.

    `a` has shape ``(..., n, n)``.  Each sweep visits every pair (p, q) and
    zeroes the off-diagonal entry with a complex Givens rotation; the whole
    stack is rotated at once.  Stops once the off-diagonal Frobenius norm of
    every matrix is below ``tol`` times max(1, its Frobenius norm).
    """
    a = np.array(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError("expected a stack of square matrices")
    if hermitian_deviation(a) > hermitian_tol:
        raise HermitianError("matrix is not Hermitian")
    n = a.shape[-1]
    batch = a.shape[:-2]
    a = a.reshape((-1, n, n))
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    scale = np.maximum(1.0, np.linalg.norm(a, axis=(1, 2)))
    mask = ~np.eye(n, dtype=bool)

    def off_norm():
        return np.sqrt(np.sum(np.abs(a[:, mask]) ** 2, axis=1))

    for _ in range(max_sweeps):
        if np.all(off_norm() <= tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                r = np.abs(apq)
                active = r > 1e-300
                if not np.any(active):
                    continue
                e = np.where(active, apq / np.where(active, r, 1.0), 1.0)
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                theta = np.where(active, 0.5 * np.arctan2(2 * r, app - aqq), 0.0)
                c, s = np.cos(theta), np.sin(theta)
                # columns p, q of G = diag(1, conj(e)) @ [[c, -s], [s, c]]
                g00, g01 = c, -s
                g10, g11 = s * np.conj(e), c * np.conj(e)
                colp = a[:, :, p].copy()
                colq = a[:, :, q].copy()
                a[:, :, p] = colp * g00[:, None] + colq * g10[:, None]
                a[:, :, q] = colp * g01[:, None] + colq * g11[:, None]
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :].copy()
                a[:, p, :] = np.conj(g00)[:, None] * rowp + np.conj(g10)[:, None] * rowq
                a[:, q, :] = np.conj(g01)[:, None] * rowp + np.conj(g11)[:, None] * rowq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        if not np.all(off_norm() <= tol * scale):
            raise JacobiConvergenceError("Jacobi sweeps did not converge")
    w = np.sort(np.real(np.diagonal(a, axis1=1, axis2=2)), axis=1)
    return w.reshape(batch + (n,))
