"""Net validation module."""

from .net_quality import (
    Mode,
    NetValidator,
    ValidationReport,
    ValidationResult,
    validate,
)

__all__ = [
    "Mode",
    "NetValidator",
    "ValidationReport",
    "ValidationResult",
    "validate",
]
