"""
Shift operators, and the finite combinations of them that collapse the exponentially decaying scaling functions and
wavelets into compactly supported closed forms:

    Phi_n = beta_n * B_n
    Psi_n = (delta_n * gamma~_n / 2^(2n+1)) * (d/dx)^(n+1) B_{2n+1}(2x + n)

All of the operator algebra runs on :class:`TranslateSeries` weight maps; polynomials are only materialized to measure
the distance to the closed forms.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import comb
from typing import TYPE_CHECKING, Iterable, NamedTuple, Optional, Sequence, Union

from .bspline import bspline, high_order_derivative
from .config import config as default_config
from .enums import Sign, ShiftKind, TChoice
from .euler_frobenius import euler_frobenius_data, constants
from .exceptions import InvalidParameters, ShiftOperatorError
from .poly_core import DyadicRational, PiecewisePolynomial, linear_combine, translate_dilate, sup_distance, moment
from .reports import VerificationReport
from .wavelets import WaveletSpec, TranslateSeries, phi_series, psi_series, series_to_polynomial, iter_specs
from .wavelets.factory import validate_epsilon

if TYPE_CHECKING:
    from .config import WaveletConfig

__all__ = [
    'ShiftOperatorSpec',
    'LambdaChoice',
    'LocalisedPhi',
    'LocalisedPsi',
    'apply_shift_op',
    'apply_shift_ops',
    'build_Phi',
    'build_Lambda',
    'build_Psi',
    'psi_closed_form',
    'verify_dym_identities',
    'verify_localisation',
]
log = logging.getLogger(__name__)

VALID_STEPS = frozenset({DyadicRational(1), DyadicRational(1, 1)})


# region Shift Operators


@dataclass(frozen=True)
class ShiftOperatorSpec:
    """
    The operator ``F -> F + r_j * F(. + step)``.  ``kind`` records whether factor j belongs to the t_j = r_j set (S)
    or the t_j = 1/r_j set (R); both act identically.

    :param kind: S or R
    :param index: The 0-based index j of the factor r_j
    :param step: The signed translation; +/-1 or +/-1/2
    :param r: An explicit factor to use in place of r_j
    """

    kind: ShiftKind
    index: int
    step: DyadicRational
    r: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', ShiftKind(self.kind))
        object.__setattr__(self, 'step', DyadicRational.of(self.step))
        if abs(self.step) not in VALID_STEPS:
            raise ShiftOperatorError('step', self.step, 'expected one of +1, -1, +1/2, -1/2')

    def __str__(self) -> str:
        return f'{self.kind.value}_{self.index + 1}^{{{self.step}}}'

    @property
    def direction(self) -> int:
        return 1 if self.step > 0 else -1

    def factor(self, n: int) -> float:
        if not 0 <= self.index < n:
            raise ShiftOperatorError('index', self.index, f'the series has order {n=}, so the index must be < {n}')
        if self.r is not None:
            return self.r
        return euler_frobenius_data(n).rs[self.index]


def apply_shift_op(op: ShiftOperatorSpec, series: TranslateSeries) -> TranslateSeries:
    """``F + r * F(. + step)``, as a two-tap filter on the weight map"""
    r = op.factor(series.n)
    if r == 0:
        return series
    return TranslateSeries.combine([(1, series), (r, series.translated(-op.step))])


def apply_shift_ops(ops: Iterable[ShiftOperatorSpec], series: TranslateSeries) -> TranslateSeries:
    """Apply the operators in order (the first operator is applied first)."""
    for op in ops:
        series = apply_shift_op(op, series)
    return series


# endregion

# region Phi


class LocalisedPhi(NamedTuple):
    series: TranslateSeries
    closed_form: PiecewisePolynomial
    residual: float  # max |w| away from shift 0
    center_weight: float

    @property
    def materialized(self) -> PiecewisePolynomial:
        return series_to_polynomial(self.series)


def phi_operators(spec: WaveletSpec) -> list[ShiftOperatorSpec]:
    sigma = spec.sigma
    ops = [ShiftOperatorSpec(ShiftKind.S, j, sigma) for j in spec.j_r]
    ops += [ShiftOperatorSpec(ShiftKind.R, j, -sigma) for j in spec.j_inv_r]
    return ops


def build_Phi(
    n: int,
    sign: Union[Sign, str] = Sign.PLUS,
    epsilon: float = None,
    tchoice: Sequence[Union[TChoice, str]] = None,
    config: WaveletConfig = None,
) -> LocalisedPhi:
    """
    Apply ``S_j^{+/-1}`` for every t_j = r_j and ``R_j^{-/+1}`` for every t_j = 1/r_j to the centred scaling
    function.  The result telescopes to ``beta_n * B_n`` up to the truncated tails.
    """
    config = config or default_config
    spec = WaveletSpec(n, sign, tchoice)
    series = apply_shift_ops(phi_operators(spec), phi_series(spec, epsilon, centred=True, config=config))
    beta = euler_frobenius_data(n, config).beta
    residual = max((abs(w) for shift, w in series.items() if shift), default=0.0)
    center = series[0]
    log.debug(f'Localised phi for {spec}: center weight={center!r} (beta={beta!r}), {residual=:.3e}')
    return LocalisedPhi(series, bspline(n, config) * beta, residual, center)


# endregion

# region Lambda


@dataclass(frozen=True)
class LambdaChoice:
    tchoice: tuple[TChoice, ...]
    sign: Sign = Sign.PLUS

    @classmethod
    def from_spec(cls, spec: WaveletSpec) -> LambdaChoice:
        return cls(spec.tchoice, spec.sign)

    @property
    def spec(self) -> WaveletSpec:
        return WaveletSpec(len(self.tchoice), self.sign, self.tchoice)

    def operators(self) -> list[ShiftOperatorSpec]:
        spec = self.spec
        sigma = spec.sigma
        half = DyadicRational(sigma, 1)
        ops = []
        for j in range(spec.n):
            if j in spec.j_r:
                ops += [ShiftOperatorSpec(ShiftKind.S, j, half), ShiftOperatorSpec(ShiftKind.S, j, -sigma)]
            else:
                ops += [ShiftOperatorSpec(ShiftKind.R, j, -half), ShiftOperatorSpec(ShiftKind.R, j, sigma)]
        return ops


def build_Lambda(choice: LambdaChoice, epsilon: float = None, config: WaveletConfig = None) -> TranslateSeries:
    """
    Apply ``S_j^{-/+1} S_j^{+/-1/2}`` for every t_j = r_j and ``R_j^{+/-1} R_j^{-/+1/2}`` for every t_j = 1/r_j to
    the centred wavelet.  Every geometric factor telescopes, leaving a finite combination of ``B_n(2x - k)``.
    """
    psi = psi_series(choice.spec, epsilon, centred=True, config=config)
    return apply_shift_ops(choice.operators(), psi)


# endregion

# region Psi


class LocalisedPsi(NamedTuple):
    series: TranslateSeries
    closed_form: PiecewisePolynomial
    sup_distance: float
    support_tail: float  # sum of |w| for translates that leave [-n/2, n/2 + 1]

    @property
    def materialized(self) -> PiecewisePolynomial:
        return series_to_polynomial(self.series)


def psi_closed_form(n: int, config: WaveletConfig = None) -> PiecewisePolynomial:
    """``(delta_n * gamma~_n / 2^(2n+1)) * (d/dx)^(n+1) B_{2n+1}(2x + n)``"""
    data = euler_frobenius_data(n, config)
    consts = constants(data, [TChoice.USE_R] * n)
    return high_order_derivative(n, config).dilated * (consts.delta * consts.gamma_tilde / 2 ** (2 * n + 1))


def build_Psi(
    n: int,
    sign: Union[Sign, str] = Sign.PLUS,
    epsilon: float = None,
    order: Sequence[int] = None,
    config: WaveletConfig = None,
) -> LocalisedPsi:
    """
    Build all 2^n localised wavelets and fold them together, one index at a time, with

        T^j = T^{j-1}[t_j = r_j] / sqrt(r_j) - sqrt(r_j) * T^{j-1}[t_j = 1/r_j]

    :param n: The B-spline order; must not exceed the configured ``max_psi_order``
    :param sign: The global +/- convention
    :param epsilon: The truncation threshold for each wavelet series
    :param order: The order in which indices are folded (default: 0, 1, ..., n - 1)
    :param config: The config to use
    """
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    if n > (max_n := config.max_psi_order):
        raise InvalidParameters('n', n, f'localised wavelets are limited to n <= {max_n} (see BLW_MAX_N)')
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise InvalidParameters('order', order, f'expected a permutation of 0..{n - 1}')

    rs = euler_frobenius_data(n, config).rs
    current: dict[tuple[Optional[TChoice], ...], TranslateSeries] = {
        spec.tchoice: build_Lambda(LambdaChoice.from_spec(spec), epsilon, config) for spec in iter_specs(n, sign)
    }
    for j in order:
        root_r = math.sqrt(rs[j])
        folded = {}
        for key, series in current.items():
            if key[j] is TChoice.USE_R:
                other = current[key[:j] + (TChoice.USE_INV_R,) + key[j + 1 :]]
                merged = TranslateSeries.combine([(1 / root_r, series), (-root_r, other)])
                folded[key[:j] + (None,) + key[j + 1 :]] = merged
        current = folded

    (series,) = current.values()
    closed_form = psi_closed_form(n, config)
    distance = sup_distance(series_to_polynomial(series), closed_form, 2 * n + 4)
    tail = sum(abs(w) for shift, w in series.items() if not -n <= shift <= 1)
    log.debug(f'Localised psi for {n=}: sup distance={distance:.3e}, support tail={tail:.3e}')
    return LocalisedPsi(series, closed_form, distance, tail)


# endregion

# region Verification


def verify_dym_identities(n: int, config: WaveletConfig = None) -> VerificationReport:
    """
    Check the real-side identities satisfied by Psi_n / (gamma~_n * delta_n), using its exact closed form:

    - n = 1: ``Psi_1(y - 1/2) = B_1(y) - 2 B_1(2y - 1)``
    - n = 2: ``Psi_2(x) = B_2(x + 1) - (3/2) B_2(2x + 1) - (1/2) B_2(2x - 1)``
    - n >= 1: ``Psi_n(x - n/2) = B_n(x) - 2^(1 - n) sum_{k odd} C(n + 1, k) B_n(2x - k)``
    """
    config = config or default_config
    if n < 1:
        raise InvalidParameters('n', n, 'the identities require n >= 1')

    report = VerificationReport(f'dym[{n=}]', config.tolerances())
    report.extra['form'] = 'real-side: B_n(2x - m) corresponds to e^{-imw/2} B^_n(w/2) / 2'
    normalized = high_order_derivative(n, config).dilated * 2.0 ** (-2 * n - 1)  # Psi_n / (gamma~_n * delta_n)
    b = bspline(n, config)
    samples = 2 * n + 4

    if n == 1:
        rhs = linear_combine([(1.0, b), (-2.0, translate_dilate(b, 1, 1))])
        residual = sup_distance(normalized.shifted(DyadicRational(1, 1)), rhs, samples)
        report.add_residual('dym1', residual, config.dym_tolerance)
    elif n == 2:
        rhs = linear_combine(
            [(1.0, b.shifted(-1)), (-1.5, translate_dilate(b, -1, 1)), (-0.5, translate_dilate(b, 1, 1))]
        )
        report.add_residual('dym2', sup_distance(normalized, rhs, samples), config.dym_tolerance)

    odd = [(-(2.0 ** (1 - n)) * comb(n + 1, k), translate_dilate(b, k, 1)) for k in range(1, n + 2, 2)]
    rhs = linear_combine([(1.0, b), *odd])
    residual = sup_distance(normalized.shifted(DyadicRational(n, 1)), rhs, samples)
    report.add_residual('dymm', residual, config.dymm_tolerance)
    return report


def verify_localisation(
    n: int, epsilon: float = None, sign: Union[Sign, str] = Sign.PLUS, config: WaveletConfig = None
) -> VerificationReport:
    """Check both localisation identities for order n; Psi is only assembled up to the configured maximum order."""
    config = config or default_config
    epsilon = validate_epsilon(epsilon, config)
    report = VerificationReport(f'localisation[{n=}, epsilon={epsilon:.1e}]', config.tolerances())

    phi = build_Phi(n, sign, epsilon, config=config)
    beta = euler_frobenius_data(n, config).beta
    report.add_residual('phi.residual', phi.residual, config.phi_residual_factor * epsilon)
    report.add_residual('phi.center', abs(phi.center_weight - beta), config.localisation_tolerance, f'beta={beta!r}')

    if n > config.max_psi_order:
        report.add_flag('psi', True, f'skipped: {n=} > max_psi_order={config.max_psi_order}')
        return report

    psi = build_Psi(n, sign, epsilon, config=config)
    report.add_residual('psi.sup_distance', psi.sup_distance, config.psi_tolerance)
    report.add_residual('psi.support_tail', psi.support_tail, config.psi_tolerance)
    moments = max(abs(moment(psi.closed_form, m)) for m in range(n + 1))
    report.add_residual('psi.closed_form_moments', moments, config.moment_tolerance)
    if n >= 1:
        report.merge(verify_dym_identities(n, config), 'identities')
    return report


# endregion
