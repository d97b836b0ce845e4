"""Numeric layer: band functions, critical points and Morse censuses."""
from .bands import BandGrid, band_grid, band_values, default_resolution, eigenvalues_at, grid_points
from .critical import (
    DEFAULT_TOL,
    BandReport,
    ConvergenceError,
    CornerHessian,
    CornerPair,
    CornerPoint,
    CriticalPoint,
    FlatBandError,
    HessianResult,
    MorseReport,
    NewtonResult,
    NonCornerWitness,
    NonSmoothPoint,
    Tolerances,
    ToleranceFailure,
    algebraic_non_corner_search,
    all_corners,
    corner_hessian,
    corner_of,
    corner_polynomial,
    corner_spectrum,
    cpe_residual,
    hessian_at,
    morse_census,
    newton_batch,
    newton_refine,
    torus_distance,
    witness_bands,
)
from .jacobi import HermitianError, JacobiConvergenceError, hermitian_deviation, jacobi_eigvalsh
from .numeric import NumericPoly

__all__ = [
    "DEFAULT_TOL",
    "BandGrid",
    "BandReport",
    "ConvergenceError",
    "CornerHessian",
    "CornerPair",
    "CornerPoint",
    "CriticalPoint",
    "FlatBandError",
    "HermitianError",
    "HessianResult",
    "JacobiConvergenceError",
    "MorseReport",
    "NewtonResult",
    "NonCornerWitness",
    "NonSmoothPoint",
    "NumericPoly",
    "Tolerances",
    "ToleranceFailure",
    "algebraic_non_corner_search",
    "all_corners",
    "band_grid",
    "band_values",
    "corner_hessian",
    "corner_of",
    "corner_polynomial",
    "corner_spectrum",
    "cpe_residual",
    "default_resolution",
    "eigenvalues_at",
    "grid_points",
    "hermitian_deviation",
    "hessian_at",
    "jacobi_eigvalsh",
    "morse_census",
    "newton_batch",
    "newton_refine",
    "torus_distance",
    "witness_bands",
]
