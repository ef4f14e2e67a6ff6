"""Frequent sequence mining with pattern-expression constraints."""

from ._core import DataError, Dataset, PatternError, __version__, describe, parse

__all__ = ["DataError", "Dataset", "PatternError", "__version__", "describe", "parse"]
