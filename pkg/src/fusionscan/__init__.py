"""Enumerate, filter and certify types of integral fusion categories of a given dimension."""

from .enumerate import count_signatures, enumerate_signatures
from .signature import TypeSignature, global_dim, is_frobenius_type, parse_signature, render_signature

__version__ = "0.1.0"

__all__ = [
    "TypeSignature",
    "parse_signature",
    "render_signature",
    "global_dim",
    "is_frobenius_type",
    "enumerate_signatures",
    "count_signatures",
]
