"""
Scaling functions and wavelets as truncated series of B-spline translates.

Every infinite factor is a geometric series ``sum_l (-r)^l`` placed on the shift lattice with a step of +/-1 or +/-2,
so each series is built as a chain of one-dimensional convolutions over dense integer lattices.  Each factor is
truncated at ``L = ceil(log(epsilon) / log(r))``, and the mass of everything left out is tracked as a bound.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from math import comb, prod
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from ..config import config as default_config
from ..euler_frobenius import euler_frobenius_data, constants
from ..exceptions import InvalidParameters
from ..poly_core import DyadicRational
from .series import TranslateSeries
from .spec import WaveletSpec

if TYPE_CHECKING:
    from ..config import WaveletConfig

__all__ = [
    'phi_series',
    'psi_series',
    'wavelet_system',
    'inner_vector',
    'truncation_length',
    'validate_epsilon',
    'Lattice',
]
log = logging.getLogger(__name__)


class Lattice(NamedTuple):
    """Dense weights on the consecutive integer shifts ``first, first + 1, ...``"""

    first: int
    weights: np.ndarray

    @classmethod
    def unit(cls, shift: int = 0, weight: float = 1.0) -> Lattice:
        return cls(shift, np.array([weight], dtype=float))

    @classmethod
    def geometric(cls, r: float, length: int, step: int) -> Lattice:
        """``sum_{l=0}^{length} (-r)^l`` placed at shifts ``step * l``"""
        weights = np.zeros(abs(step) * length + 1)
        weights[:: abs(step)] = (-r) ** np.arange(length + 1)
        if step < 0:
            return cls(step * length, weights[::-1].copy())
        return cls(0, weights)

    def convolved(self, other: Lattice) -> Lattice:
        return Lattice(self.first + other.first, np.convolve(self.weights, other.weights))

    def shifted(self, offset: int) -> Lattice:
        return Lattice(self.first + offset, self.weights)


def validate_epsilon(epsilon: float | None, config: WaveletConfig = None) -> float:
    epsilon = (config or default_config).epsilon if epsilon is None else epsilon
    try:
        valid = 0 < epsilon < 1
    except TypeError:
        valid = False
    if not valid:
        raise InvalidParameters('epsilon', epsilon, 'must be in the open interval (0, 1)')
    return float(epsilon)


def truncation_length(r: float, epsilon: float) -> int:
    """The smallest L >= 1 with ``r**L <= epsilon``"""
    return max(1, math.ceil(math.log(epsilon) / math.log(r)))


def _geometric_bounds(rs: list[float], epsilon: float) -> tuple[list[int], float]:
    """Truncation lengths for each factor, and ``prod(full sums) - prod(truncated sums)`` of their magnitudes."""
    lengths = [truncation_length(r, epsilon) for r in rs]
    full = prod(1 / (1 - r) for r in rs)
    kept = prod((1 - r ** (length + 1)) / (1 - r) for r, length in zip(rs, lengths))
    return lengths, max(0.0, full - kept)


# region Scaling Function


def phi_series(
    spec: WaveletSpec, epsilon: float = None, centred: bool = False, config: WaveletConfig = None
) -> TranslateSeries:
    """
    The scaling function for the given spec, as a series of ``B_n(x - k)``.  Factors with t_j = r_j contribute
    ``sum_l (-r_j)^l B_n(x + sign * l)``, factors with t_j = 1/r_j contribute ``sum_l (-r_j)^l B_n(x - sign * l)``,
    and the uncentred function is additionally translated by ``sign * c_{1/r}``.
    """
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    data = euler_frobenius_data(spec.n, config)
    sigma = spec.sigma

    rs = list(data.rs)
    lengths, missing = _geometric_bounds(rs, epsilon)
    lattice = Lattice.unit(weight=data.beta)
    for j, (r, length) in enumerate(zip(rs, lengths)):
        step = -sigma if j in spec.j_r else sigma
        lattice = lattice.convolved(Lattice.geometric(r, length, step))
    if not centred:
        lattice = lattice.shifted(sigma * spec.c_inv_r)

    log.debug(f'Building phi for {spec} with truncation lengths={lengths}, {len(lattice.weights)} lattice points')
    return TranslateSeries.from_lattice(
        spec.n, 0, lattice.first, lattice.weights, epsilon, data.beta * missing, config.prune_ratio
    )


# endregion

# region Wavelet


def inner_vector(spec: WaveletSpec, config: WaveletConfig = None) -> tuple[int, tuple[Fraction, ...]]:
    """
    The finite part of the wavelet's coefficients: the product of ``prod_j (1/t_j - u^-sign)`` and
    ``sum_k (-1)^k C(n + 1, k) u^(n - k)``, written on the shift lattice (``u^e`` sits at shift ``-e``).  Computed in
    exact rational arithmetic from the float values of 1/t_j, so the coefficients sum to exactly 0.

    :return: The first shift and the coefficients for consecutive shifts
    """
    data = euler_frobenius_data(spec.n, config)
    sigma = spec.sigma
    first, coeffs = -spec.n, [Fraction((-1) ** k * comb(spec.n + 1, k)) for k in range(spec.n + 2)]
    for j in range(spec.n):
        inv_t = Fraction(1 / data.rs[j]) if j in spec.j_r else Fraction(data.rs[j])
        factor = [inv_t, Fraction(-1)] if sigma > 0 else [Fraction(-1), inv_t]
        first += 0 if sigma > 0 else -1
        coeffs = _convolve_exact(coeffs, factor)
    return first, tuple(coeffs)


def _convolve_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    result = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            result[i + j] += x * y
    return result


def psi_series(
    spec: WaveletSpec, epsilon: float = None, centred: bool = False, config: WaveletConfig = None
) -> TranslateSeries:
    """
    The wavelet for the given spec, as a series of ``B_n(2x - k)``.  The weights are ``(-1)^n * gamma_n`` times the
    inner vector, convolved with two geometric factors per index j:

    - t_j = r_j: ``sum_m (-r_j)^m`` at shifts ``2 * sign * m`` and ``sum_l (-r_j)^l`` at shifts ``-sign * l``
    - t_j = 1/r_j: ``sum_m (-r_j)^m`` at shifts ``-2 * sign * m`` and ``sum_l (-r_j)^l`` at shifts ``sign * l``

    The uncentred wavelet is additionally translated by ``-sign * c_{1/r} / 2``.
    """
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    data = euler_frobenius_data(spec.n, config)
    sigma = spec.sigma

    first, inner = inner_vector(spec, config)
    prefactor = (-1) ** spec.n * constants(data, spec.tchoice).gamma
    lattice = Lattice(first, np.array([float(c) for c in inner]) * prefactor)

    rs = list(data.rs)
    lengths, missing = _geometric_bounds(rs + rs, epsilon)
    for j, r in enumerate(rs):
        direction = sigma if j in spec.j_r else -sigma
        lattice = lattice.convolved(Lattice.geometric(r, lengths[j], 2 * direction))
        lattice = lattice.convolved(Lattice.geometric(r, lengths[j + spec.n], -direction))
    if not centred:
        lattice = lattice.shifted(-sigma * spec.c_inv_r)

    scale = abs(prefactor) * float(sum(abs(c) for c in inner))
    log.debug(f'Building psi for {spec} with truncation lengths={lengths[:spec.n]}, {len(lattice.weights)} points')
    return TranslateSeries.from_lattice(
        spec.n, 1, lattice.first, lattice.weights, epsilon, scale * missing, config.prune_ratio
    )


# endregion


def wavelet_system(
    spec: WaveletSpec, epsilon: float = None, half_shift: bool = False, config: WaveletConfig = None
) -> tuple[TranslateSeries, TranslateSeries]:
    """
    The uncentred (phi, psi) pair whose translates form an orthonormal system.  With ``half_shift``, both are moved
    by ``sign / 2``, which yields the system generated by the half-integer translates of B_n.
    """
    phi = phi_series(spec, epsilon, config=config)
    psi = psi_series(spec, epsilon, config=config)
    if half_shift:
        offset = DyadicRational(spec.sigma, 1)
        return phi.translated(offset), psi.translated(offset)
    return phi, psi
