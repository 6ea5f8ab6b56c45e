"""
Cardinal B-splines B_n, built by the pointwise recursion

    B_n(x) = x / n * B_{n-1}(x) + (n + 1 - x) / n * B_{n-1}(x - 1)

applied coefficient-wise to each unit piece, and the structural identities that the wavelet constructions rely on.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb, factorial
from typing import TYPE_CHECKING, NamedTuple, Union

import numpy as np
from numpy.polynomial import polynomial as npp

from .caching import order_cache
from .config import config as default_config
from .exceptions import InvalidParameters
from .poly_core import PiecewisePolynomial, linear_combine, translate_dilate, differentiate, sup_distance
from .reports import VerificationReport

if TYPE_CHECKING:
    from .config import WaveletConfig

__all__ = [
    'BSplineOrder',
    'bspline',
    'verify_bspline_properties',
    'two_scale_expand',
    'two_scale_combination',
    'derivative_identity_check',
    'high_order_derivative',
    'HighOrderDerivative',
    'ddiff_sides',
]
log = logging.getLogger(__name__)

OrderLike = Union[int, 'BSplineOrder']


@dataclass(frozen=True)
class BSplineOrder:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 0:
            raise InvalidParameters('n', self.n, 'B-spline orders must be non-negative integers')

    @classmethod
    def of(cls, n: OrderLike, config: WaveletConfig = None) -> BSplineOrder:
        order = n if isinstance(n, cls) else cls(n)
        if order.n > (maximum := (config or default_config).max_bspline_order):
            raise InvalidParameters('n', order.n, f'the configured maximum B-spline order is {maximum}')
        return order

    def __int__(self) -> int:
        return int(self.n)


def bspline(n: OrderLike, config: WaveletConfig = None) -> PiecewisePolynomial:
    """B_n on the knots 0, 1, ..., n + 1."""
    return _bspline(int(BSplineOrder.of(n, config)))


@order_cache(32)
def _bspline(n: int) -> PiecewisePolynomial:
    pieces = [np.ones(1)]
    for m in range(1, n + 1):
        zero = np.zeros(m)
        prev = pieces
        pieces = []
        for i in range(m + 1):
            right = prev[i] if i < m else zero  # B_{m-1} on [i, i + 1)
            left = prev[i - 1] if i else zero  # B_{m-1}(x - 1) on [i, i + 1)
            pieces.append((np.convolve([i, 1], right) + np.convolve([m + 1 - i, -1], left)) / m)
    log.debug(f'Built B_{n} with {len(pieces)} pieces')
    return PiecewisePolynomial(range(n + 2), np.array(pieces))


def verify_bspline_properties(n: OrderLike, config: WaveletConfig = None) -> VerificationReport:
    """Check support, positivity, smoothness at the knots, and symmetry of B_n."""
    config = config or default_config
    n = int(BSplineOrder.of(n, config))
    if n < 1:
        raise InvalidParameters('n', n, 'property checks require n >= 1')

    report = VerificationReport(f'bspline[{n=}]', config.tolerances())
    b = bspline(n, config)
    support_ok = b.knots == tuple(range(n + 2)) and b.n_pieces == n + 1
    report.add_flag('support', support_ok, f'support=[{b.knots[0]}, {b.knots[-1]}]')

    midpoints = np.arange(n + 1) + 0.5
    report.add_flag('positivity', bool(np.all(b(midpoints) > 0)), f'min={np.min(b(midpoints)):.6g}')

    jump = 0.0
    for order in range(n):
        for k in range(1, n + 1):
            left = npp.polyval(1.0, npp.polyder(b.pieces[k - 1], order))
            right = b.pieces[k][order] * factorial(order)
            jump = max(jump, abs(left - right))
    report.add_residual('continuity', jump, config.continuity_tol, f'derivatives 0..{n - 1}')

    center = (n + 1) / 2
    x = np.linspace(0, center, 100)
    report.add_residual('symmetry', float(np.max(np.abs(b(center - x) - b(center + x)))), config.symmetry_tol)
    return report


def two_scale_expand(n: int) -> list[tuple[int, float]]:
    """Coefficients of B_n(x) = sum_k w_k B_n(2x - k), with w_k = 2^-n * C(n + 1, k)."""
    return [(k, comb(n + 1, k) / 2**n) for k in range(n + 2)]


def two_scale_combination(n: int, config: WaveletConfig = None) -> PiecewisePolynomial:
    """The right hand side of the two-scale relation, materialized."""
    b = bspline(n, config)
    return linear_combine((w, translate_dilate(b, k, 1)) for k, w in two_scale_expand(n))


def derivative_identity_check(n: OrderLike, config: WaveletConfig = None) -> bool:
    """True iff B_n' = B_{n-1} - B_{n-1}(. - 1) away from the knots."""
    config = config or default_config
    n = int(BSplineOrder.of(n, config))
    if n < 1:
        raise InvalidParameters('n', n, 'the derivative identity requires n >= 1')
    prev = bspline(n - 1, config)
    expected = linear_combine([(1.0, prev), (-1.0, prev.shifted(1))])
    residual = sup_distance(differentiate(bspline(n, config)), expected, n + 1)
    log.debug(f'Derivative identity for B_{n}: {residual=}')
    return residual <= config.derivative_tol


class HighOrderDerivative(NamedTuple):
    derivative: PiecewisePolynomial  # B_{2n+1}^{(n+1)}
    dilated: PiecewisePolynomial  # (d/dx)^(n+1) of x -> B_{2n+1}(2x + n)


def high_order_derivative(n: int, config: WaveletConfig = None) -> HighOrderDerivative:
    """
    B_{2n+1} differentiated n + 1 times, and the n + 1st derivative of x -> B_{2n+1}(2x + n), which carries the
    chain rule factor 2^(n+1).
    """
    f = bspline(2 * n + 1, config)
    g = translate_dilate(f, -n, 1)
    for _ in range(n + 1):
        f, g = differentiate(f), differentiate(g)
    return HighOrderDerivative(f, g)


def ddiff_sides(n: int, config: WaveletConfig = None) -> tuple[PiecewisePolynomial, PiecewisePolynomial]:
    """
    Both sides of the identity

        2^-n * sum_k (-1)^k C(n + 1, k) B_n(2x + n - k) = 2^(-2n-1) * (d/dx)^(n+1) B_{2n+1}(2x + n)
    """
    b = bspline(n, config)
    lhs = linear_combine(((-1) ** k * comb(n + 1, k) / 2**n, translate_dilate(b, k - n, 1)) for k in range(n + 2))
    rhs = high_order_derivative(n, config).dilated * 2.0 ** (-2 * n - 1)
    return lhs, rhs
