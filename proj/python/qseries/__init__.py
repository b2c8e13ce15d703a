"""Exact q-series expansion and identity verification."""

from ._core import (
    ParseError,
    QSeriesError,
    bernoulli,
    degree_check,
    expand,
    expand_text,
    modular_residual,
    normalize,
    record_ids,
    verify,
    verify_all,
)

__all__ = [
    "ParseError",
    "QSeriesError",
    "bernoulli",
    "degree_check",
    "expand",
    "expand_text",
    "modular_residual",
    "normalize",
    "record_ids",
    "verify",
    "verify_all",
]
