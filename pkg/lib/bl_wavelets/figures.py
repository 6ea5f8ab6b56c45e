"""
Sample data for plotting scaling functions and wavelets.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable

import numpy as np

from .config import config as default_config
from .enums import SeriesKind, Sign
from .euler_frobenius import euler_frobenius_data
from .exceptions import InvalidParameters
from .poly_core import DyadicRational
from .reports import json_number
from .wavelets import TranslateSeries, WaveletSpec, phi_series, psi_series, series_to_polynomial

if TYPE_CHECKING:
    from .config import WaveletConfig
    from .typing import Interval

__all__ = ['FIGURES', 'FigureSpec', 'SampledFunction', 'sample_series', 'mass_window', 'plot_data']
log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FigureSpec:
    label: str
    kind: SeriesKind
    spec: Callable[[], WaveletSpec]
    times_r1: bool = False

    def series(self, epsilon: float = None, config: WaveletConfig = None) -> TranslateSeries:
        spec = self.spec()
        builder = phi_series if self.kind is SeriesKind.PHI else psi_series
        series = builder(spec, epsilon, config=config)
        if self.times_r1:
            series = series.scaled(euler_frobenius_data(spec.n, config).rs[0])
        return series


FIGURES = {
    'phi1+': FigureSpec('phi_1^+', SeriesKind.PHI, lambda: WaveletSpec.all_r(1, Sign.PLUS)),
    'phi1-': FigureSpec('phi_1^-', SeriesKind.PHI, lambda: WaveletSpec.all_r(1, Sign.MINUS)),
    'psi_r1+': FigureSpec('psi_{r_1}^+', SeriesKind.PSI, lambda: WaveletSpec.all_r(1, Sign.PLUS)),
    'r1psi_1/r1+': FigureSpec('r_1 psi_{1/r_1}^+', SeriesKind.PSI, lambda: WaveletSpec.all_inv_r(1, Sign.PLUS), True),
    'psi_r1-': FigureSpec('psi_{r_1}^-', SeriesKind.PSI, lambda: WaveletSpec.all_r(1, Sign.MINUS)),
    'r1psi_1/r1-': FigureSpec('r_1 psi_{1/r_1}^-', SeriesKind.PSI, lambda: WaveletSpec.all_inv_r(1, Sign.MINUS), True),
    'phi2+': FigureSpec('phi_2^+', SeriesKind.PHI, lambda: WaveletSpec.all_r(2, Sign.PLUS)),
    'phi2-': FigureSpec('phi_2^-', SeriesKind.PHI, lambda: WaveletSpec.all_r(2, Sign.MINUS)),
    'psi_r1r2+': FigureSpec('psi_{r_1,r_2}^+', SeriesKind.PSI, lambda: WaveletSpec.all_r(2, Sign.PLUS)),
}


@dataclass
class SampledFunction:
    label: str
    window: Interval
    xs: np.ndarray
    values: np.ndarray

    def rows(self):
        return zip(self.xs.tolist(), self.values.tolist())

    def to_json(self) -> dict[str, Any]:
        return {
            'label': self.label,
            'window': [float(v) for v in self.window],
            'samples': [[x, json_number(v)] for x, v in self.rows()],
        }


def mass_window(series: TranslateSeries, mass: float, step: float) -> Interval:
    """
    The smallest window, on the sample grid, that fully contains the translates carrying ``mass`` of the series'
    total ``sum |w|``; the excluded mass is split evenly between both tails.
    """
    if not 0 < mass <= 1:
        raise InvalidParameters('mass', mass, 'must be in (0, 1]')
    if not len(series):
        return DyadicRational(0), DyadicRational(0)
    shifts = series.shifts
    cumulative = np.cumsum(np.abs(series.weights))
    total = cumulative[-1]
    cut = (1 - mass) / 2 * total
    lo = int(np.searchsorted(cumulative, cut, side='right'))
    hi = int(np.searchsorted(cumulative, total - cut, side='left'))
    hi = min(max(hi, lo), len(shifts) - 1)
    scale = -series.log2_dilation
    start, stop = shifts[lo].scaled(scale), (shifts[hi] + series.n + 1).scaled(scale)
    grid = DyadicRational.of(step)
    return _snap(start, grid, floor=True), _snap(stop, grid, floor=False)


def _snap(value: DyadicRational, step: DyadicRational, floor: bool) -> DyadicRational:
    ratio = value.fraction / step.fraction
    count = ratio.numerator // ratio.denominator if floor else -(-ratio.numerator // ratio.denominator)
    return step * count


def sample_series(
    series: TranslateSeries, window: Interval, step: float = None, label: str = '', config: WaveletConfig = None
) -> SampledFunction:
    """Evaluate the series at ``window[0] + k * step`` for every point in the closed window."""
    step = (config or default_config).sample_step if step is None else step
    if step <= 0:
        raise InvalidParameters('step', step, 'must be positive')
    lo, hi = (float(DyadicRational.of(v)) for v in window)
    if hi < lo:
        raise InvalidParameters('window', window, 'the end must not precede the start')
    xs = lo + step * np.arange(int(np.floor((hi - lo) / step + 1e-9)) + 1)
    values = series_to_polynomial(series)(xs)
    return SampledFunction(label or repr(series), window, xs, np.asarray(values, dtype=float))


def plot_data(figure_id: str, epsilon: float = None, config: WaveletConfig = None) -> SampledFunction:
    """Samples (with the configured step) of one of the figure functions over the window holding most of its mass."""
    try:
        figure = FIGURES[figure_id]
    except KeyError:
        raise InvalidParameters('figure', figure_id, f'expected one of: {", ".join(FIGURES)}') from None
    config = config or default_config
    series = figure.series(epsilon, config)
    window = mass_window(series, config.figure_mass, config.sample_step)
    log.debug(f'Sampling figure {figure_id} on {window=}')
    return sample_series(series, window, config.sample_step, figure.label, config)
