"""
Quadrature rules and sample points shared by the piecewise polynomial calculus.
"""

from __future__ import annotations

from functools import lru_cache
from math import ceil

import numpy as np
from numpy.polynomial.chebyshev import chebpts2
from numpy.polynomial.legendre import leggauss

__all__ = ['gauss_legendre', 'gauss_order', 'chebyshev_unit_points', 'horner', 'horner_grid']


@lru_cache(64)
def _gauss_legendre(npts: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(npts)
    # Map from [-1, 1] to [0, 1]
    nodes = (nodes + 1) / 2
    weights = weights / 2
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_legendre(npts: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]; exact for polynomials of degree <= 2 * npts - 1."""
    return _gauss_legendre(max(1, npts))


def gauss_order(degree: int) -> int:
    """The number of Gauss-Legendre nodes needed to integrate a polynomial of the given degree exactly."""
    return max(1, ceil((degree + 1) / 2))


@lru_cache(64)
def chebyshev_unit_points(count: int) -> np.ndarray:
    """Chebyshev extreme points mapped to [0, 1] (both endpoints included)."""
    points = (chebpts2(max(2, count)) + 1) / 2
    points.flags.writeable = False
    return points


def horner(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluate row ``i`` of ``coeffs`` (ascending powers) at ``t[i]``."""
    values = coeffs[:, -1].copy()
    for k in range(coeffs.shape[1] - 2, -1, -1):
        values *= t
        values += coeffs[:, k]
    return values


def horner_grid(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluate row ``i`` of ``coeffs`` at every point of ``t[i, :]``."""
    values = np.repeat(coeffs[:, -1:], t.shape[1], axis=1)
    for k in range(coeffs.shape[1] - 2, -1, -1):
        values *= t
        values += coeffs[:, k : k + 1]
    return values
