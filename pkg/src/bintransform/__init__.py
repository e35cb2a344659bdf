"""Exact binomial transforms, the n∇ operator calculus, and an identity checker."""

from .core import (
    DomainError,
    OperatorPolynomial,
    PreconditionError,
    Sequence,
    apply_operator_polynomial,
    average_transform,
    backward_difference,
    binomial,
    binomial_transform,
    divided_transform,
    format_rational,
    inverse_unsigned_binomial_transform,
    multiply_by_index_pow,
    n_nabla,
    n_nabla_pow,
    parse_rational,
    shifted_transform_rhs,
    unsigned_binomial_transform,
)
from .identities import register_builtin_identities, verify, verify_all

__version__ = "0.1.0"
