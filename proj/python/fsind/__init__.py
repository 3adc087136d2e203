"""Exact higher Frobenius-Schur indicators of metacyclic and generalized quaternion groups."""

from ._core import (
    GroupSpec,
    InvalidSpec,
    Unsupported,
    double_indicators,
    group_indicators,
    info,
    spec,
    verify,
)

__all__ = [
    "GroupSpec",
    "InvalidSpec",
    "Unsupported",
    "double_indicators",
    "group_indicators",
    "info",
    "spec",
    "verify",
]
