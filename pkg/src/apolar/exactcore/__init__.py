"""Exact fields and dense exact linear algebra."""

from .fields import (
    DEFAULT_PRIME,
    GF,
    QQ,
    CharacteristicError,
    Field,
    FieldMismatch,
    Mod,
    PrimeField,
    RationalField,
    default_prime,
    parse_field,
)
from .matrix import (
    BACKEND,
    DimensionMismatch,
    ExactMatrix,
    kernel_raw,
    mat_kernel_basis,
    mat_rank,
    mat_rref,
    mat_solve,
    rank_raw,
    rref_modp,
    rref_raw,
)
from .sparse import SparseEchelon

__all__ = [
    "BACKEND", "DEFAULT_PRIME", "GF", "QQ", "CharacteristicError", "DimensionMismatch",
    "ExactMatrix", "Field", "FieldMismatch", "Mod", "PrimeField", "RationalField",
    "SparseEchelon", "default_prime", "kernel_raw", "mat_kernel_basis", "mat_rank",
    "mat_rref", "mat_solve", "parse_field", "rank_raw", "rref_modp", "rref_raw",
]
