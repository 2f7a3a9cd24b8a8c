"""Similarity measures the defender compares originals and prints with."""

import numpy as np

from src.utils.errors import DimensionMismatchError, DomainError


def pearson(x, y) -> float:
    """Sample correlation of two equal-length vectors.

    Convention: ``x`` is the rendered original (1 = dark), ``y`` the ink
    intensity of the print, so authentic prints score positive.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise DimensionMismatchError(f"pearson needs equal lengths, got {x.size} and {y.size}")
    if x.size < 2:
        raise DimensionMismatchError("pearson needs at least two values")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise DomainError("Correlation is undefined for a constant input")
    r = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def hamming_norm(a, b) -> float:
    """Fraction of positions where two binary vectors differ."""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.size != b.size:
        raise DimensionMismatchError(f"hamming_norm needs equal lengths, got {a.size} and {b.size}")
    if a.size == 0:
        raise DimensionMismatchError("hamming_norm needs at least one position")
    return float(np.count_nonzero(a.astype(bool) != b.astype(bool)) / a.size)


def pearson_or_zero(x, y) -> float:
    """:func:`pearson`, scoring 0 when one side is flat (no linear relation to measure)."""
    try:
        return pearson(x, y)
    except DomainError:
        return 0.0
