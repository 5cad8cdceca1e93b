"""Arithmetic backbone: scalars, 2x2 matrices, polynomials, rational functions."""

from .linalg import RootError, SingularSystemError, nullspace, poly_roots, rank, solve
from .matrix import Matrix2, commutator, eigenvector, normalize_direction, same_direction
from .poles import ConfigurationError, PoleConfig, partial_fractions, recombine
from .poly import NEG_INF, Poly, poly_eval
from .ratfunc import NonLogarithmicError, RatFunc
from .scalar import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    BackendError,
    GaussQ,
    backend_of,
    is_close,
    is_zero,
    recip,
    scalar,
)

__all__ = [
    "BackendError", "ConfigurationError", "DEFAULT_TOL", "EXACT", "FLOAT", "GaussQ",
    "Matrix2", "NEG_INF", "NonLogarithmicError", "PoleConfig", "Poly", "RatFunc",
    "RootError", "SingularSystemError", "backend_of", "commutator", "eigenvector", "is_close",
    "is_zero",
    "normalize_direction", "nullspace", "partial_fractions", "poly_eval", "poly_roots",
    "rank", "recip", "recombine", "same_direction", "scalar", "solve",
]
