"""Shared exception types."""

from __future__ import annotations


class Breakdown(Exception):
    """A leading principal minor of the moment matrix vanished.

    The Gauss-Borel factorization does not exist; no partial result is kept.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"zero pivot at index {index}: leading principal minor vanishes")


class DepthError(Exception):
    """A truncation is too shallow for the requested operation."""

    def __init__(self, message: str, required: int | None = None):
        self.required = required
        super().__init__(message)


class ConfigError(Exception):
    """Invalid run configuration or measure specification."""


class SingularMatrix(Exception):
    """Exact inversion hit a singular matrix."""
