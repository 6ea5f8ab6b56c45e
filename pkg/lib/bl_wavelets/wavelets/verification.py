"""
Orthonormality, vanishing moment, decay, and smoothness checks for the constructed scaling functions and wavelets.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import factorial
from typing import TYPE_CHECKING, Any, NamedTuple, Union

import numpy as np
from numpy.polynomial import polynomial as npp

from ..config import config as default_config
from ..enums import SystemKind
from ..euler_frobenius import euler_frobenius_data
from ..exceptions import InvalidParameters
from ..poly_core import PiecewisePolynomial, inner_product, moment, translate_dilate
from ..reports import VerificationReport, json_number
from .factory import psi_series, wavelet_system, validate_epsilon
from .series import TranslateSeries, series_to_polynomial
from .spec import WaveletSpec

if TYPE_CHECKING:
    from ..config import WaveletConfig

__all__ = [
    'GramMatrix',
    'gram_matrix',
    'gram_report',
    'vanishing_moments',
    'moments_report',
    'DecayCheck',
    'decay_check',
    'smoothness_check',
]
log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2)


@dataclass
class GramMatrix:
    system: SystemKind
    spec: WaveletSpec
    shift_range: int
    matrix: np.ndarray
    expected: np.ndarray

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.matrix - self.expected)))

    def to_json(self) -> dict[str, Any]:
        return {
            'system': self.system.value,
            'spec': self.spec.to_json(),
            'shift_range': self.shift_range,
            'max_deviation': json_number(self.max_deviation),
            'matrix': [[json_number(v) for v in row] for row in self.matrix],
        }


def gram_matrix(
    system: Union[SystemKind, str],
    spec: WaveletSpec,
    shift_range: int,
    epsilon: float = None,
    half_shift: bool = False,
    config: WaveletConfig = None,
) -> GramMatrix:
    """
    Inner products of the translates ``f(. - k)``, ``g(. - m)`` for ``k, m`` in ``[-shift_range, shift_range]``.

    The phi and psi systems are compared against the identity.  The cross system is compared against 0; its matrix
    holds ``<phi(. - k), psi(. - m)>`` in the first ``2K + 1`` columns, followed by
    ``sqrt(2) * <psi(. - k), psi(2 . - m)>`` for ``m`` in ``[-2K, 2K]``.
    """
    system = SystemKind(system)
    if shift_range < 1:
        raise InvalidParameters('shift_range', shift_range, 'must be >= 1')
    epsilon = validate_epsilon(epsilon, config)
    phi, psi = (series_to_polynomial(s) for s in wavelet_system(spec, epsilon, half_shift, config))
    size = 2 * shift_range + 1
    k = np.arange(-shift_range, shift_range + 1)

    if system is SystemKind.CROSS:
        lags = range(-2 * shift_range, 2 * shift_range + 1)
        cross = {j: inner_product(phi, psi.shifted(j)) for j in lags}
        m2 = np.arange(-2 * shift_range, 2 * shift_range + 1)
        lags2 = range(-4 * shift_range, 4 * shift_range + 1)
        scales = {j: SQRT2 * inner_product(psi, translate_dilate(psi, j, 1)) for j in lags2}
        same = np.array([[cross[m - kk] for m in k] for kk in k])
        between = np.array([[scales[m - 2 * kk] for m in m2] for kk in k])
        matrix = np.hstack([same, between])
        expected = np.zeros_like(matrix)
    else:
        f = phi if system is SystemKind.PHI else psi
        auto = [inner_product(f, f.shifted(j)) for j in range(size)]
        matrix = np.array([[auto[abs(m - kk)] for m in k] for kk in k])
        expected = np.eye(size)

    gram = GramMatrix(system, spec, shift_range, matrix, expected)
    log.debug(f'Gram matrix for {system.value} {spec} with {shift_range=}: max deviation={gram.max_deviation:.3e}')
    return gram


def vanishing_moments(spec: WaveletSpec, epsilon: float = None, config: WaveletConfig = None) -> list[float]:
    """The moments ``integral(x^m psi(x))`` for ``m = 0..n`` of the centred wavelet."""
    psi = series_to_polynomial(psi_series(spec, epsilon, centred=True, config=config))
    return [moment(psi, m) for m in range(spec.n + 1)]


class DecayCheck(NamedTuple):
    rate: float
    ok: bool


def decay_check(series: TranslateSeries, config: WaveletConfig = None) -> DecayCheck:
    """
    Fit the exponential decay rate (per unit of x) of the weight envelope on both tails of the series.  The check
    passes when the slower tail decays at least as fast as ``0.99 * -log(max r_j)``.
    """
    data = euler_frobenius_data(series.n, config)
    if not data.rs or len(series) < 2:
        return DecayCheck(math.inf, True)

    shifts = np.array([float(s) for s in series.shifts]) / 2**series.log2_dilation
    magnitude = np.abs(series.weights)
    peak = shifts[np.argmax(magnitude)]
    rates = []
    for side in (shifts > peak, shifts < peak):
        if (rate := _tail_rate(np.abs(shifts[side] - peak), magnitude[side])) is not None:
            rates.append(rate)

    if not rates:
        return DecayCheck(math.inf, True)
    rate = min(rates)
    required = 0.99 * -math.log(data.max_r)
    log.debug(f'Decay of {series}: {rate=:.6f}, {required=:.6f}')
    return DecayCheck(rate, rate >= required)


def _tail_rate(distance: np.ndarray, magnitude: np.ndarray) -> float | None:
    order = np.argsort(distance)
    distance, magnitude = distance[order], magnitude[order]
    envelope = np.maximum.accumulate(magnitude[::-1])[::-1]  # max |w| at this distance or beyond
    tail = slice(distance.size // 2, None)
    if distance[tail].size < 3:
        return None
    slope = np.polyfit(distance[tail], np.log(envelope[tail]), 1)[0]
    return float(-slope)


def smoothness_check(series: TranslateSeries, config: WaveletConfig = None) -> VerificationReport:
    """
    Check that the materialized series has continuous derivatives of orders ``0..n-1`` at every knot, and that its
    knots lie on the half-integer grid.
    """
    config = config or default_config
    report = VerificationReport(f'smoothness[n={series.n}, d={series.log2_dilation}]', config.tolerances())
    f = series_to_polynomial(series)
    if f.is_zero:
        report.add_flag('knots', True, 'zero function')
        return report

    report.add_flag('knots', all(k.scale <= 1 for k in f.knots), 'every knot is in (1/2)Z')
    report.add_residual('continuity', _max_relative_jump(f, series.n), config.continuity_tol)
    return report


def _max_relative_jump(f: PiecewisePolynomial, orders: int) -> float:
    widths = f.widths
    worst = 0.0
    # The function vanishes outside of its support, so the end knots are included via zero pieces
    pieces = np.vstack([np.zeros((1, f.pieces.shape[1])), f.pieces, np.zeros((1, f.pieces.shape[1]))])
    ends = np.concatenate([[0.0], widths, [0.0]])
    for order in range(orders):
        left = np.array([npp.polyval(w, npp.polyder(p, order)) for p, w in zip(pieces, ends)])
        right = pieces[:, order] * factorial(order) if order < pieces.shape[1] else np.zeros(len(pieces))
        jumps = np.abs(left[:-1] - right[1:])
        scale = max(1.0, float(np.max(np.abs(right))))
        worst = max(worst, float(np.max(jumps)) / scale)
    return worst


def gram_report(
    spec: WaveletSpec,
    shift_range: int = 8,
    epsilon: float = None,
    half_shift: bool = False,
    config: WaveletConfig = None,
) -> VerificationReport:
    """Orthonormality of the phi and psi systems, and orthogonality between them and across scales."""
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    name = f'gram[{spec}, K={shift_range}, epsilon={epsilon:.1e}{", half shift" if half_shift else ""}]'
    report = VerificationReport(name, config.tolerances())
    for system in SystemKind:
        gram = gram_matrix(system, spec, shift_range, epsilon, half_shift, config)
        report.add_residual(system.value, gram.max_deviation, config.gram_tolerance)
    return report


def moments_report(spec: WaveletSpec, epsilon: float = None, config: WaveletConfig = None) -> VerificationReport:
    config = config or default_config
    report = VerificationReport(f'moments[{spec}]', config.tolerances())
    for m, value in enumerate(vanishing_moments(spec, epsilon, config)):
        report.add_residual(f'm={m}', abs(value), config.moment_tolerance)
    return report
