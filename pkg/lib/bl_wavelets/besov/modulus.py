"""
A classical Besov norm through the modulus of smoothness, for sanity checks of the sequence norms.

The M-th differences ``Delta_h^M f`` are formed exactly (with rational knots and coefficients) on the merged knots of
the translates ``f(. + k*h)``, so the only approximation is the finite t-grid and the finite net of step sizes h that
the modulus is maximized over.  The result is a heuristic oracle, not a certified norm.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator

import numpy as np

from ..exceptions import InvalidParameters
from ..poly_core import PiecewisePolynomial
from ..poly_core.quadrature import chebyshev_unit_points, gauss_legendre, gauss_order, horner_grid
from .params import lq_combine, parse_exponent

__all__ = ['DyadicGrid', 'modulus_norm', 'modulus_of_smoothness', 'lp_function_norm', 'finite_difference']
log = logging.getLogger(__name__)

LN2 = math.log(2)


@dataclass(frozen=True)
class DyadicGrid:
    """
    The t-grid ``2^-j`` for ``j = min_level..max_level``; the modulus at t is maximized over ``h = t * 2^-i`` for
    ``i = 0..h_refine``.
    """

    max_level: int = 12
    min_level: int = 0
    h_refine: int = 2

    def __post_init__(self):
        if self.max_level < self.min_level:
            raise InvalidParameters('grid', self, 'max_level must be >= min_level')
        if self.h_refine < 0:
            raise InvalidParameters('grid', self, 'h_refine must be >= 0')

    def ts(self) -> Iterator[Fraction]:
        for j in range(self.min_level, self.max_level + 1):
            yield Fraction(1, 2**j) if j >= 0 else Fraction(2 ** -j)

    def steps(self, t: Fraction) -> Iterator[Fraction]:
        for i in range(self.h_refine + 1):
            yield t / 2**i


class _ExactPieces:
    """The pieces of f with rational knots and coefficients."""

    __slots__ = ('knots', 'coeffs')

    def __init__(self, f: PiecewisePolynomial):
        self.knots = [k.fraction for k in f.knots]
        self.coeffs = [[Fraction(float(c)) for c in row] for row in f.pieces]

    def expansion_at(self, x: Fraction) -> list[Fraction] | None:
        """The coefficients of f(x + t) in powers of t, for the piece that contains x (None outside the support)"""
        i = bisect_right(self.knots, x) - 1
        if i < 0 or i >= len(self.coeffs):
            return None
        return _taylor_shift(self.coeffs[i], x - self.knots[i])


def _taylor_shift(coeffs: list[Fraction], offset: Fraction) -> list[Fraction]:
    result = list(coeffs)
    size = len(result)
    for i in range(size - 1):
        for k in range(size - 2, i - 1, -1):
            result[k] += offset * result[k + 1]
    return result


def finite_difference(f: PiecewisePolynomial, h: Fraction, order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    ``(Delta_h^M f)(x) = sum_k (-1)^(M-k) C(M, k) f(x + k*h)`` on the merged knots.

    :return: The widths of the pieces and their (ascending power) coefficients
    """
    if f.is_zero:
        return np.zeros(0), np.zeros((0, 1))
    exact = _ExactPieces(f)
    points = sorted({knot - k * h for knot in exact.knots for k in range(order + 1)})
    size = len(exact.coeffs[0])
    widths, pieces = [], []
    for a, b in zip(points, points[1:]):
        total = [Fraction(0)] * size
        for k in range(order + 1):
            if (local := exact.expansion_at(a + k * h)) is None:
                continue
            sign_coeff = (-1) ** (order - k) * comb(order, k)
            for i, c in enumerate(local):
                total[i] += sign_coeff * c
        widths.append(float(b - a))
        pieces.append([float(c) for c in total])
    return np.array(widths), np.array(pieces)


def _lp_of_pieces(widths: np.ndarray, pieces: np.ndarray, p: float) -> float:
    if not widths.size:
        return 0.0
    degree = pieces.shape[1] - 1
    if math.isinf(p):
        points = chebyshev_unit_points(degree + 8)
        return float(np.max(np.abs(horner_grid(pieces, widths[:, None] * points[None, :]))))
    # Exact for even integer p; |P|^p is only approximated otherwise
    nodes, weights = gauss_legendre(gauss_order(math.ceil(p) * degree) + (0 if p == int(p) and p % 2 == 0 else 8))
    values = np.abs(horner_grid(pieces, widths[:, None] * nodes[None, :])) ** p
    return float(np.sum(widths * (values @ weights)) ** (1 / p))


def lp_function_norm(f: PiecewisePolynomial, p: float) -> float:
    if f.is_zero:
        return 0.0
    return _lp_of_pieces(f.widths, f.pieces, parse_exponent(p))


def modulus_of_smoothness(f: PiecewisePolynomial, order: int, t: Fraction, p: float, h_refine: int = 2) -> float:
    """``omega_M(f, t)_p``, estimated as the max of ``||Delta_h^M f||_p`` over ``h = t * 2^-i``, ``i = 0..h_refine``"""
    t = Fraction(t)
    return max(_lp_of_pieces(*finite_difference(f, h, order), p) for h in DyadicGrid(0, 0, h_refine).steps(t))


def modulus_norm(f: PiecewisePolynomial, order: int, s: float, p: float, q: float, grid: DyadicGrid = None) -> float:
    """
    ``||f||_p + (sum_t [t^-s * omega_M(f, t)_p]^q * dt/t)^(1/q)`` over the dyadic t-grid, where ``dt/t = ln 2``.

    :param f: A compactly supported piecewise polynomial
    :param order: The order M of the differences
    :param s: The smoothness, with ``max(0, 1/p - 1) < s < M``
    :param p: The integrability exponent, in ``[1, inf]``
    :param q: The summability exponent, in ``[1, inf]``
    :param grid: The t-grid and step net
    """
    p, q = parse_exponent(p, 'p'), parse_exponent(q, 'q')
    if p < 1 or q < 1:
        raise InvalidParameters('p, q', (p, q), 'the modulus characterization requires 1 <= p, q <= inf')
    if not isinstance(order, int) or order < 1:
        raise InvalidParameters('M', order, 'must be a positive integer')
    lower = max(0.0, (0.0 if math.isinf(p) else 1 / p) - 1)
    if not lower < s < order:
        raise InvalidParameters('s', s, f'must satisfy {lower} < s < {order}')
    if f.is_zero:
        return 0.0

    grid = grid or DyadicGrid()
    terms = []
    for t in grid.ts():
        omega = modulus_of_smoothness(f, order, t, p, grid.h_refine)
        terms.append(float(t) ** -s * omega * (1.0 if math.isinf(q) else LN2 ** (1 / q)))

    value = lp_function_norm(f, p) + lq_combine(terms, q)
    log.debug(f'Modulus norm with M={order}, {s=}, {p=}, {q=} over {len(terms)} scales: {value}')
    return value
