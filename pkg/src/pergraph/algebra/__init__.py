from .laurent import LAMBDA, DimensionError, LaurentPoly
from .linalg import determinant
from .univariate import (
    RootInterval,
    UniPoly,
    gcd_and_real_roots,
    gcd_many,
    poly_gcd,
    real_roots,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
    sylvester_resultant,
    vanishes_at,
)

__all__ = [
    "LAMBDA",
    "DimensionError",
    "LaurentPoly",
    "RootInterval",
    "UniPoly",
    "determinant",
    "gcd_and_real_roots",
    "gcd_many",
    "poly_gcd",
    "real_roots",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_sequence",
    "sylvester_resultant",
    "vanishes_at",
]
