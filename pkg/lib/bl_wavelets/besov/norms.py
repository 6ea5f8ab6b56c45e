"""
The wavelet sequence norm, the B-spline localised norm, and the level (-1) equivalence constants between them.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Optional

import numpy as np

from ..bspline import bspline, high_order_derivative
from ..config import config as default_config
from ..euler_frobenius import euler_frobenius_data
from ..exceptions import InvalidParameters
from ..poly_core import PiecewisePolynomial, pair_with_translates
from ..reports import json_number
from ..wavelets import WaveletSpec, validate_epsilon
from .params import BesovParams, lp_norm, lq_combine
from .transform import SQRT2, wavelet_pairings

if TYPE_CHECKING:
    from ..config import WaveletConfig

__all__ = [
    'LevelTerm',
    'NormBlocks',
    'star_blocks',
    'circ_blocks',
    'norm_star',
    'norm_circ',
    'level_decay_slope',
    'EquivalenceBounds',
    'EquivalenceReport',
    'equivalence_bounds',
    'equivalence_report',
]
log = logging.getLogger(__name__)


class LevelTerm:
    __slots__ = ('level', 'raw', 'weight')

    def __init__(self, level: int, raw: float, weight: float):
        self.level = level
        self.raw = raw  # l^p of the pairings on this level
        self.weight = weight

    def __repr__(self) -> str:
        return f'<LevelTerm[d={self.level}, raw={self.raw:.6e}, weighted={self.weighted:.6e}]>'

    @property
    def weighted(self) -> float:
        return self.raw * self.weight


@dataclass
class NormBlocks:
    """The first (level -1) term of a norm, and the per-level terms that are combined with the l^q quasi-norm."""

    kind: str
    params: BesovParams
    first: float
    levels: list[LevelTerm] = field(default_factory=list)
    truncation_mass: float = 0.0

    @property
    def second(self) -> float:
        return lq_combine([term.weighted for term in self.levels], self.params.q)

    @property
    def value(self) -> float:
        return self.first + self.second

    def to_json(self) -> dict[str, Any]:
        return {
            'kind': self.kind,
            'params': self.params.to_json(),
            'value': json_number(self.value),
            'first': json_number(self.first),
            'second': json_number(self.second),
            'levels': [
                {'d': t.level, 'raw': json_number(t.raw), 'weighted': json_number(t.weighted)} for t in self.levels
            ],
            'truncation_mass': json_number(self.truncation_mass),
        }


# region Norms


def star_blocks(
    f: PiecewisePolynomial,
    params: BesovParams,
    max_level: int = 8,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> NormBlocks:
    """The blocks of the norm defined by the pairings of f with the orthonormal wavelet system."""
    pairings = wavelet_pairings(f, params.n, max_level, epsilon, spec, config)
    p = params.p
    first = lp_norm(pairings.levels[-1].values, p) if -1 in pairings.levels else 0.0
    levels = [
        LevelTerm(d, lp_norm(pairings.levels[d].values, p) if d in pairings.levels else 0.0, params.level_weight(d))
        for d in range(max_level + 1)
    ]
    return NormBlocks('star', params, first, levels, pairings.truncation_mass)


def circ_blocks(
    f: PiecewisePolynomial, params: BesovParams, max_level: int = 8, config: WaveletConfig = None
) -> NormBlocks:
    """
    The blocks of the localised norm, which pairs f with ``B_n(. - tau)`` on the first level and with
    ``B_{2n+1}^{(n+1)}(2^(d+1) . - tau)`` on level d.  No truncation is involved.
    """
    if max_level < 0:
        raise InvalidParameters('D', max_level, 'must be >= 0')
    p = params.p
    if f.is_zero:
        empty = [LevelTerm(d, 0.0, params.level_weight(d)) for d in range(max_level + 1)]
        return NormBlocks('circ', params, 0.0, empty)

    first = lp_norm(pair_with_translates(f, bspline(params.n, config), 0)[1], p)
    kernel = high_order_derivative(params.n, config).derivative
    levels = [
        LevelTerm(d, lp_norm(pair_with_translates(f, kernel, d + 1)[1], p), params.level_weight(d))
        for d in range(max_level + 1)
    ]
    return NormBlocks('circ', params, first, levels)


def norm_star(
    f: PiecewisePolynomial,
    params: BesovParams,
    max_level: int = 8,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> float:
    return star_blocks(f, params, max_level, epsilon, spec, config).value


def norm_circ(f: PiecewisePolynomial, params: BesovParams, max_level: int = 8, config: WaveletConfig = None) -> float:
    return circ_blocks(f, params, max_level, config).value


def level_decay_slope(blocks: NormBlocks, start: int = 1) -> float:
    """The least squares slope of ``log2(weighted level term)`` against the level, over the levels >= start."""
    points = [(t.level, math.log2(t.weighted)) for t in blocks.levels if t.level >= start and t.weighted > 0]
    if len(points) < 2:
        raise InvalidParameters('blocks', blocks.kind, 'at least 2 nonzero levels are required to fit a slope')
    x, y = np.array(points).T
    return float(np.polyfit(x, y, 1)[0])


# endregion

# region Equivalence


class EquivalenceBounds:
    __slots__ = ('lower', 'upper')

    def __init__(self, lower: float, upper: float):
        self.lower = lower
        self.upper = upper

    def __repr__(self) -> str:
        return f'<EquivalenceBounds[{self.lower:.12g}, {self.upper:.12g}]>'

    def __iter__(self):
        yield self.lower
        yield self.upper

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower * (1 - slack) <= value <= self.upper * (1 + slack)


def equivalence_bounds(n: int, p: float, config: WaveletConfig = None) -> EquivalenceBounds:
    """
    Constants C1, C2 with ``C1 <= l^p<f, phi(. - tau)> / l^p<f, B_n(. - tau)> <= C2`` for every nonzero f.  With the
    p-triangle inequality when ``p <= 1``, and with Young's inequality otherwise.
    """
    data = euler_frobenius_data(n, config)
    beta, rs = data.beta, data.rs
    if p <= 1:
        lower = beta * math.prod(1 + r**p for r in rs) ** (-1 / p)
        upper = beta * math.prod(1 / (1 - r**p) for r in rs) ** (1 / p)
    else:
        lower = beta / math.prod(1 + r for r in rs)
        upper = beta / math.prod(1 - r for r in rs)
    return EquivalenceBounds(lower, upper)


@dataclass
class EquivalenceReport:
    star: NormBlocks
    circ: NormBlocks
    block_ratio: Optional[float]
    bounds: EquivalenceBounds
    slack: float

    @property
    def ratio(self) -> Optional[float]:
        """The measured ratio of the two norms (undefined for the zero function)"""
        circ = self.circ.value
        return self.star.value / circ if circ else None

    @property
    def violation(self) -> bool:
        if self.block_ratio is None:
            return False
        return not self.bounds.contains(self.block_ratio, self.slack)

    def to_json(self) -> dict[str, Any]:
        return {
            'star': self.star.value,
            'circ': self.circ.value,
            'ratio': json_number(self.ratio),
            'block_ratio': json_number(self.block_ratio),
            'bounds': [json_number(v) for v in self.bounds],
            'violation': self.violation,
            'tail_bounds': {'truncation_mass': json_number(self.star.truncation_mass)},
            'blocks': {'star': self.star.to_json(), 'circ': self.circ.to_json()},
        }


def equivalence_report(
    f: PiecewisePolynomial,
    params: BesovParams,
    max_level: int = 8,
    epsilon: float = None,
    spec: WaveletSpec = None,
    config: WaveletConfig = None,
) -> EquivalenceReport:
    """
    Compute both norms, and compare the ratio of the level (-1) blocks, ``l^p<f, phi(. - tau)>`` over
    ``l^p<f, B_n(. - tau)>``, against the constants from :func:`equivalence_bounds`.
    """
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    star = star_blocks(f, params, max_level, epsilon, spec, config)
    circ = circ_blocks(f, params, max_level, config)
    bounds = equivalence_bounds(params.n, params.p, config)
    block_ratio = star.first / SQRT2 / circ.first if circ.first else None
    report = EquivalenceReport(star, circ, block_ratio, bounds, config.bound_slack)
    if report.violation:
        log.warning(f'The level -1 block ratio={block_ratio} is outside of {bounds} for {params}')
    else:
        log.debug(f'Equivalence for {params}: ratio={report.ratio}, {block_ratio=}, {bounds=}')
    return report


# endregion
