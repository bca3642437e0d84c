"""Matrix-function calculus and numerical checks of norm inequalities for operator monotone functions."""

from .errors import DomainError, IneligibleError, MatrixFormatError, NonConvergenceError
from .funcat import FunctionSpec, catalog_get, divided_difference, measure_derivative
from .hermitian import (
    SpectralDecomposition,
    as_hermitian,
    eig_hermitian,
    is_positive_definite,
    random_pd,
    schur_product,
)
from .norms import NormKind, norm, norm_identity, parse_norm

__all__ = [
    "DomainError",
    "FunctionSpec",
    "IneligibleError",
    "MatrixFormatError",
    "NonConvergenceError",
    "NormKind",
    "SpectralDecomposition",
    "as_hermitian",
    "catalog_get",
    "divided_difference",
    "eig_hermitian",
    "is_positive_definite",
    "measure_derivative",
    "norm",
    "norm_identity",
    "parse_norm",
    "random_pd",
    "schur_product",
]
