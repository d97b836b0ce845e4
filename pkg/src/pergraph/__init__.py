"""Exact and numeric spectral analysis of labeled ℤ^d-periodic graphs."""
__version__ = "0.1.0"

from .algebra import LaurentPoly, RootInterval, UniPoly
from .floquet import (
    FloquetMatrix,
    SparseForm,
    dispersion,
    dispersion_polynomial,
    flat_bands,
    floquet_matrix,
    graph_from_matrix,
    sparse_form,
)
from .graph import (
    EdgeOrbit,
    FlowerSpec,
    IsthmusSpec,
    PeriodicGraph,
    Petal,
    Projection,
    Vertex,
    build_flower,
    build_isthmus,
    coordinate_projection,
    enumerate_projections,
    is_connected,
    parallel_extension,
    validate,
)

__all__ = [
    "EdgeOrbit",
    "FloquetMatrix",
    "FlowerSpec",
    "IsthmusSpec",
    "LaurentPoly",
    "PeriodicGraph",
    "Petal",
    "Projection",
    "RootInterval",
    "SparseForm",
    "UniPoly",
    "Vertex",
    "build_flower",
    "build_isthmus",
    "coordinate_projection",
    "dispersion",
    "dispersion_polynomial",
    "enumerate_projections",
    "flat_bands",
    "floquet_matrix",
    "graph_from_matrix",
    "is_connected",
    "parallel_extension",
    "sparse_form",
    "validate",
]
