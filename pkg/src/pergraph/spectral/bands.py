"""Band functions: eigenvalues of H(exp(2πik)) at points and on grids."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..floquet import FloquetMatrix, NumericMatrix, floquet_matrix
from ..graph import PeriodicGraph
from .jacobi import jacobi_eigvalsh


def _numeric(h) -> NumericMatrix:
    if isinstance(h, NumericMatrix):
        return h
    if isinstance(h, PeriodicGraph):
        h = floquet_matrix(h)
    if isinstance(h, FloquetMatrix):
        return h.numeric()
    raise TypeError(f"cannot evaluate {type(h).__name__} as a Floquet matrix")


def band_values(h, k, tol: float = 1e-13, threads: int | None = None) -> np.ndarray:
    """Sorted eigenvalues at each row of `k`; shape (N, |W|)."""
    num = _numeric(h)
    k = np.atleast_2d(np.asarray(k, dtype=float))
    if threads and threads > 1 and len(k) > 1:
        chunks = np.array_split(k, threads)
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: jacobi_eigvalsh(num(c), tol=tol), chunks))
        return np.concatenate(parts)
    return jacobi_eigvalsh(num(k), tol=tol)


def eigenvalues_at(h, k) -> list[float]:
    """Ascending eigenvalues of H at z = exp(2πik)."""
    num = _numeric(h)
    k = np.asarray(k, dtype=float).reshape(-1)
    if k.shape[0] != num.dimension:
        raise ValueError(f"expected a quasi-momentum of length {num.dimension}")
    return [float(x) for x in jacobi_eigvalsh(num(k[None, :]))[0]]


def grid_points(n: int, d: int) -> np.ndarray:
    """The n^d uniform grid in [0, 1)^d, last axis varying fastest."""
    axes = np.indices((n,) * d).reshape(d, -1).T
    return axes / n


@dataclass
class BandGrid:
    n: int
    k: np.ndarray
    values: np.ndarray

    @property
    def ranges(self) -> list[tuple[float, float]]:
        return [(float(c.min()), float(c.max())) for c in self.values.T]

    def to_tsv(self) -> str:
        d = self.k.shape[1]
        head = [f"k{i}" for i in range(1, d + 1)] + [f"band{b}" for b in range(1, self.values.shape[1] + 1)]
        lines = ["\t".join(head)]
        for kk, vv in zip(self.k, self.values):
            lines.append("\t".join([f"{x:.6f}" for x in kk] + [f"{x:.12g}" for x in vv]))
        return "\n".join(lines) + "\n"


def default_resolution(d: int) -> int:
    return 64 if d <= 2 else 16 if d == 3 else 8


def band_grid(g, n: int | None = None, threads: int | None = None) -> BandGrid:
    num = _numeric(g)
    n = default_resolution(num.dimension) if n is None else n
    if n < 4:
        raise ValueError("grid resolution must be at least 4")
    k = grid_points(n, num.dimension)
    return BandGrid(n, k, band_values(num, k, threads=threads))
