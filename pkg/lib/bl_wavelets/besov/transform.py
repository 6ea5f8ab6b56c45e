"""
Coefficient analysis and synthesis in the wavelet system ``h[-1, tau] = sqrt(2) * phi(. - tau)``,
``h[d, tau] = psi(2^d . - tau)``.

Every pairing ``<f, h[d, tau]>`` is a finite correlation of the series weights with the exact pairings of f against
the B-spline translates on the matching lattice, so each level costs one call to :func:`pair_with_translates` and one
``np.convolve``.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from ..bspline import bspline
from ..exceptions import InvalidParameters
from ..poly_core import PiecewisePolynomial, linear_combine, pair_with_translates
from ..wavelets import TranslateSeries, WaveletSpec, series_to_polynomial, validate_epsilon, wavelet_system
from .params import BesovParams, CoefficientGrid, Level

if TYPE_CHECKING:
    from ..config import WaveletConfig

__all__ = ['WaveletPairings', 'wavelet_pairings', 'analyze', 'synthesize', 'correlate']
log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2)
TauWindow = Optional[tuple[int, int]]


def correlate(first_b: int, b: np.ndarray, first_w: int, w: np.ndarray) -> tuple[int, np.ndarray]:
    """
    ``c[j] = sum_t w[t] * b[j + t]`` for every j where the sum can be nonzero.

    :return: The first j, and the values for consecutive j
    """
    if not b.size or not w.size:
        return 0, np.zeros(0)
    return first_b - first_w - (w.size - 1), np.convolve(b, w[::-1])


def _even_entries(first: int, values: np.ndarray) -> Level:
    """The entries at even j, re-indexed by ``tau = j / 2``"""
    start = first % 2
    return Level((first + start) // 2, values[start::2])


@dataclass
class WaveletPairings:
    """The raw pairings ``<f, h[d, tau]>`` for ``d = -1..max_level``, and the truncation mass of the system"""

    levels: dict[int, Level]
    max_level: int
    truncation_mass: float

    def weighted(self, params: BesovParams, tau_window: TauWindow = None) -> CoefficientGrid:
        levels = {}
        for d, level in self.levels.items():
            if tau_window is not None:
                level = level.restricted(*tau_window)
            levels[d] = Level(level.first, level.values * params.level_weight(d))
        return CoefficientGrid(levels, self.max_level, 'analysis')


def _system(spec: WaveletSpec | None, n: int, epsilon: float, config: WaveletConfig = None):
    spec = spec or WaveletSpec(n)
    if spec.n != n:
        raise InvalidParameters('spec', spec, f'expected a wavelet spec with n={n}')
    return wavelet_system(spec, epsilon, config=config)


def wavelet_pairings(
    f: PiecewisePolynomial,
    n: int,
    max_level: int,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> WaveletPairings:
    """The pairings of f with every ``h[d, tau]`` whose truncated support meets the support of f."""
    if max_level < 0:
        raise InvalidParameters('D', max_level, 'must be >= 0')
    epsilon = validate_epsilon(epsilon, config)
    phi, psi = _system(spec, n, epsilon, config)
    truncation_mass = phi.discarded_mass + psi.discarded_mass
    if f.is_zero:
        return WaveletPairings({}, max_level, truncation_mass)

    kernel = bspline(n, config)
    phi_first, phi_w = phi.dense()
    psi_first, psi_w = psi.dense()

    k0, b = pair_with_translates(f, kernel, 0)
    first, values = correlate(k0, b, phi_first, phi_w)
    levels = {-1: Level(first, values * SQRT2)}
    for d in range(max_level + 1):
        k0, b = pair_with_translates(f, kernel, d + 1)
        levels[d] = _even_entries(*correlate(k0, b, psi_first, psi_w))

    log.debug(f'Computed wavelet pairings for levels -1..{max_level} with {truncation_mass=:.3e}')
    return WaveletPairings(levels, max_level, truncation_mass)


def analyze(
    f: PiecewisePolynomial,
    params: BesovParams,
    max_level: int = 8,
    tau_window: TauWindow = None,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> CoefficientGrid:
    """
    The coefficients ``mu[d, tau] = 2^(d * (s - 1/p + 1)) * <f, h[d, tau]>``.  A zero function yields an empty grid.

    :param f: A compactly supported piecewise polynomial
    :param params: The space parameters that determine the level weights
    :param max_level: The finest wavelet level D
    :param tau_window: Optionally, only keep the shifts in ``[lo, hi]`` on every level
    :param epsilon: The truncation threshold for the wavelet system
    :param spec: The choice of wavelet system (defaults to all ``t_j = r_j`` with the + sign)
    """
    pairings = wavelet_pairings(f, params.n, max_level, epsilon, spec, config)
    return pairings.weighted(params, tau_window)


def synthesize(
    mu: CoefficientGrid,
    params: BesovParams,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> PiecewisePolynomial:
    """``f = sum_d sum_tau mu[d, tau] * 2^(-d * (s - 1/p)) * h[d, tau]``, materialized."""
    epsilon = validate_epsilon(epsilon, config)
    if mu.is_empty:
        return PiecewisePolynomial.zero()

    phi, psi = _system(spec, params.n, epsilon, config)
    parts = []
    for d, level in sorted(mu.levels.items()):
        if not len(level):
            continue
        coeffs = level.values * 2.0 ** (-d * (params.s - params.inv_p))
        if d == -1:
            first_w, w = phi.dense()
            lattice = np.convolve(coeffs * SQRT2, w)
            first, log2_dilation = level.first + first_w, 0
        else:
            first_w, w = psi.dense()
            spread = np.zeros(2 * coeffs.size - 1)
            spread[::2] = coeffs
            lattice = np.convolve(spread, w)
            first, log2_dilation = 2 * level.first + first_w, d + 1
        series = TranslateSeries.from_lattice(params.n, log2_dilation, first, lattice, epsilon)
        parts.append((1.0, series_to_polynomial(series)))

    return linear_combine(parts)
