"""
K_R 算术、嵌入、迹、高度与 Galois 作用
"""
from .errors import (
    FieldValidationError,
    GaloisIndexError,
    SignatureMismatchError,
    ZeroCoordinateError,
)
from .field import FieldData, IntegerElement, apply_galois, permute_embeddings
from .kre import (
    KREElement,
    Signature,
    TotallyPositiveElement,
    involution,
    is_pisot,
    kre_mul,
    log_embedding,
    max_modulus_first,
    trace,
    trace_form,
    weil_height,
)

__all__ = [
    "FieldData",
    "FieldValidationError",
    "GaloisIndexError",
    "IntegerElement",
    "KREElement",
    "Signature",
    "SignatureMismatchError",
    "TotallyPositiveElement",
    "ZeroCoordinateError",
    "apply_galois",
    "involution",
    "is_pisot",
    "kre_mul",
    "log_embedding",
    "max_modulus_first",
    "permute_embeddings",
    "trace",
    "trace_form",
    "weil_height",
]
