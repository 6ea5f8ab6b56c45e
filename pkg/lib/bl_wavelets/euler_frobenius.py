"""
Euler-Frobenius data: the polynomials U_m(z) and U*_n(y), their roots alpha_j, the factors r_j, and the constants
derived from them.

The B-spline autocorrelation symbol satisfies

    P_n(w) = sum_k |B_n^(w + 2 pi k)|^2 = U_2n(cos(w/2)) = U*_n(sin^2(w/2)) = prod_j (1 - y / alpha_j)

so every alpha_j is a simple real root > 1 of U*_n, and r_j in (0, 1) is the smaller root of

    r^2 - 2(2 alpha_j - 1) r + 1

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import TYPE_CHECKING, Any, NamedTuple, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .caching import order_cache
from .config import config as default_config
from .enums import TChoice
from .exceptions import InvalidParameters, DomainError, RootFindingError

if TYPE_CHECKING:
    from .config import WaveletConfig

__all__ = [
    'SymmetricPolynomial',
    'EulerFrobeniusData',
    'WaveletConstants',
    'PnEstimate',
    'u_polynomial',
    'u_star',
    'find_alphas',
    'rs_from_alphas',
    'inv_rs_from_alphas',
    'euler_frobenius_data',
    'pn_product',
    'pn_direct',
    'constants',
]
log = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SymmetricPolynomial:
    """A polynomial with exact rational coefficients (ascending powers) in ``z = cos(w/2)`` or ``y = 1 - z^2``."""

    coefficients: tuple[Fraction, ...]
    variable: str = 'z'

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__}[{self.variable}: {self}]>'

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if power == 0 else f'{c}*{self.variable}' + (f'^{power}' if power > 1 else ''))
        return ' + '.join(reversed(terms)) or '0'

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def exact(self, x: Union[Fraction, int]) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __call__(self, x: float) -> float:
        value = 0.0
        for c in reversed(self.coefficients):
            value = value * x + float(c)
        return value

    def derivative(self) -> SymmetricPolynomial:
        coeffs = tuple(k * c for k, c in enumerate(self.coefficients) if k) or (Fraction(0),)
        return SymmetricPolynomial(coeffs, self.variable)

    def magnitude(self, x: Fraction) -> Fraction:
        """Sum of ``|a_k| * |x|^k``, the scale against which residuals at ``x`` are measured."""
        return sum((abs(c) * abs(x) ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def to_json(self) -> dict[str, Any]:
        return {'variable': self.variable, 'coefficients': [str(c) for c in self.coefficients]}


# region Polynomials


@order_cache(64)
def u_polynomial(m: int) -> SymmetricPolynomial:
    """U_0 = 1, U_{k+1}(z) = z U_k(z) + (1 - z^2) U_k'(z) / (k + 2)"""
    if m < 0:
        raise InvalidParameters('m', m, 'must be a non-negative integer')
    if m > 2 * default_config.max_bspline_order:
        raise InvalidParameters('m', m, f'must be <= {2 * default_config.max_bspline_order}')

    coeffs = [Fraction(1)]
    for k in range(m):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for power, c in enumerate(coeffs):
            nxt[power + 1] += c  # z * U_k
            if power:
                d = power * c / (k + 2)  # (1 - z^2) * U_k' / (k + 2)
                nxt[power - 1] += d
                nxt[power + 1] -= d
        coeffs = nxt
    return SymmetricPolynomial(tuple(coeffs), 'z')


@order_cache(64)
def u_star(n: int) -> SymmetricPolynomial:
    """U_2n with z^2 replaced by 1 - y; a degree n polynomial in y with U*(0) = 1."""
    if n < 0:
        raise InvalidParameters('n', n, 'must be a non-negative integer')
    even = u_polynomial(2 * n).coefficients[::2]  # U_2n only has even powers
    coeffs = [Fraction(0)] * (n + 1)
    for k, a in enumerate(even):
        for i in range(k + 1):  # (1 - y)^k
            coeffs[i] += a * comb(k, i) * (-1) ** i
    return SymmetricPolynomial(tuple(coeffs), 'y')


# endregion

# region Roots


def find_alphas(n: int, config: WaveletConfig = None) -> list[float]:
    """The n real roots of U*_n in ascending order, each > 1."""
    return list(_find_roots(n, config or default_config).alphas)


class _RootSet(NamedTuple):
    alphas: tuple[float, ...]
    residuals: tuple[float, ...]
    derivatives: tuple[float, ...]


def _find_roots(n: int, config: WaveletConfig) -> _RootSet:
    if n < 1:
        raise InvalidParameters('n', n, 'roots exist only for n >= 1')
    poly = u_star(n)
    coeffs = poly.coefficients
    bound = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    roots = _isolate(poly, Fraction(1), bound)
    if len(roots) != n:
        raise RootFindingError(n, f'bracketed {len(roots)} sign changes on [1, {float(bound)}]', roots)

    alphas, residuals, derivatives = [], [], []
    deriv = poly.derivative()
    for root in roots:
        alpha, step = _polish(poly, deriv, root)
        exact = Fraction(alpha)
        residual = float(abs(poly.exact(exact)) / poly.magnitude(exact))
        slope = abs(float(deriv.exact(exact)))
        if alpha <= 1:
            raise RootFindingError(n, f'root {alpha!r} is not > 1', roots)
        elif alpha - 1 < config.near_unit_root:
            log.warning(f'U*_{n} has a root within {config.near_unit_root} of 1: {alpha!r}')
        if step > config.root_step_tol * alpha:
            raise RootFindingError(n, f'root {alpha!r} did not converge (last step={step:.3e})', roots)
        elif residual > config.root_residual_tol:
            raise RootFindingError(n, f'root {alpha!r} has {residual=:.3e}', roots)
        elif slope <= config.root_simplicity_tol:
            raise RootFindingError(n, f'root {alpha!r} is not simple (|U*\'|={slope:.3e})', roots)
        alphas.append(alpha)
        residuals.append(residual)
        derivatives.append(slope)

    log.debug(f'Found roots of U*_{n}: {alphas}')
    return _RootSet(tuple(alphas), tuple(residuals), tuple(derivatives))


def _isolate(poly: SymmetricPolynomial, lo: Fraction, hi: Fraction) -> list[float]:
    """
    Real roots of a polynomial whose roots are all real and inside (lo, hi).  The roots of the derivative separate
    the roots of the polynomial, so each interval between consecutive critical points brackets at most one root.
    """
    if poly.degree < 1:
        return []
    elif poly.degree == 1:
        return [float(-poly.coefficients[0] / poly.coefficients[1])]

    critical = [Fraction(c) for c in _isolate(poly.derivative(), lo, hi)]
    points = [lo, *critical, hi]

    def sign(x: Fraction) -> int:
        value = poly.exact(x)
        return (value > 0) - (value < 0)

    def func(x: float) -> float:
        return float(poly.exact(Fraction(x)))

    roots = []
    for a, b in zip(points, points[1:]):
        sa, sb = sign(a), sign(b)
        if sb == 0:
            roots.append(float(b))
        elif sa == 0:
            if a == lo:
                roots.append(float(a))
        elif sa != sb:
            roots.append(brentq(func, float(a), float(b), xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=400))
    return roots


def _polish(poly: SymmetricPolynomial, deriv: SymmetricPolynomial, root: float) -> tuple[float, float]:
    """Newton steps in exact arithmetic, rounded to float after each step."""
    x, step = root, math.inf
    for _ in range(8):
        exact = Fraction(x)
        slope = deriv.exact(exact)
        if not slope:
            break
        nxt = float(exact - poly.exact(exact) / slope)
        step = abs(nxt - x)
        x = nxt
        if step == 0 or step <= np.spacing(x):
            break
    return x, step


def inv_rs_from_alphas(alphas: Sequence[float]) -> list[float]:
    """1/r_j = (2 alpha_j - 1) + 2 sqrt(alpha_j (alpha_j - 1))"""
    result = []
    for alpha in alphas:
        if not alpha > 1:
            raise DomainError('alpha', alpha, 'alpha must be > 1')
        result.append((2 * alpha - 1) + 2 * math.sqrt(alpha * (alpha - 1)))
    return result


def rs_from_alphas(alphas: Sequence[float]) -> list[float]:
    """
    r_j = (2 alpha_j - 1) - 2 sqrt(alpha_j (alpha_j - 1)), evaluated as the reciprocal of 1/r_j to avoid cancellation
    for large alpha.
    """
    return [1 / inv_r for inv_r in inv_rs_from_alphas(alphas)]


# endregion

# region Data


@dataclass(frozen=True)
class EulerFrobeniusData:
    n: int
    alphas: tuple[float, ...]
    rs: tuple[float, ...]
    beta: float
    delta: float
    residuals: tuple[float, ...] = ()
    derivatives: tuple[float, ...] = ()

    @property
    def inv_rs(self) -> tuple[float, ...]:
        return tuple(inv_rs_from_alphas(self.alphas))

    @property
    def max_r(self) -> float:
        return max(self.rs, default=0.0)

    def to_json(self) -> dict[str, Any]:
        return {
            'n': self.n,
            'alpha': list(self.alphas),
            'r': list(self.rs),
            'inv_r': list(self.inv_rs),
            'beta': self.beta,
            'delta': self.delta,
            'residuals': list(self.residuals),
            'derivatives': list(self.derivatives),
        }


def euler_frobenius_data(n: int, config: WaveletConfig = None) -> EulerFrobeniusData:
    config = config or default_config
    if not isinstance(n, int) or n < 0:
        raise InvalidParameters('n', n, 'must be a non-negative integer')
    elif n > config.max_bspline_order:
        raise InvalidParameters('n', n, f'the configured maximum order is {config.max_bspline_order}')
    key = (config.root_step_tol, config.root_residual_tol, config.root_simplicity_tol, config.near_unit_root)
    return _euler_frobenius_data(n, key)


@order_cache(32)
def _euler_frobenius_data(n: int, tolerances: tuple[float, ...]) -> EulerFrobeniusData:
    if n == 0:
        return EulerFrobeniusData(0, (), (), 1.0, 1.0)

    step_tol, residual_tol, simplicity_tol, near_unit = tolerances
    config = default_config.overridden(
        root_step_tol=step_tol, root_residual_tol=residual_tol, root_simplicity_tol=simplicity_tol,
        near_unit_root=near_unit,
    )  # fmt: skip
    roots = _find_roots(n, config)
    rs = rs_from_alphas(roots.alphas)
    beta = 2**n * math.sqrt(prod(a * r for a, r in zip(roots.alphas, rs)))
    delta = prod(1 / r - r for r in rs)
    log.debug(f'Euler-Frobenius data for {n=}: r={rs}, {beta=}, {delta=}')
    return EulerFrobeniusData(n, roots.alphas, tuple(rs), beta, delta, roots.residuals, roots.derivatives)


class WaveletConstants(NamedTuple):
    beta: float
    gamma: float
    gamma_tilde: float
    delta: float


def constants(data: EulerFrobeniusData, tchoice: Sequence[Union[TChoice, str]]) -> WaveletConstants:
    """The constants beta_n, gamma_n (which depends on the t-choice), gamma~_n, and delta_n."""
    tchoice = [TChoice(t) for t in tchoice]
    if len(tchoice) != data.n:
        raise InvalidParameters('tchoice', tchoice, f'expected {data.n} entries')
    ts = [r if t is TChoice.USE_R else 1 / r for r, t in zip(data.rs, tchoice)]
    prod_r = prod(data.rs)
    gamma = -math.sqrt(prod(a * t for a, t in zip(data.alphas, ts))) * prod_r
    gamma_tilde = 2**data.n * math.sqrt(prod(data.alphas)) * prod_r * (-1) ** (data.n + 1)
    return WaveletConstants(data.beta, gamma, gamma_tilde, data.delta)


# endregion

# region Autocorrelation Symbol


def pn_product(n: int, omega, data: EulerFrobeniusData = None):
    """P_n(w) = prod_j |e^{iw} r_j + 1|^2 / (4 alpha_j r_j)"""
    data = data or euler_frobenius_data(n)
    omega_arr = np.asarray(omega, dtype=float)
    value = np.ones(omega_arr.shape)
    cos = np.cos(omega_arr)
    for alpha, r in zip(data.alphas, data.rs):
        value *= (1 + 2 * r * cos + r * r) / (4 * alpha * r)
    return float(value) if value.ndim == 0 else value


class PnEstimate(NamedTuple):
    value: float
    tail_bound: float

    def __float__(self) -> float:
        return self.value


def pn_direct(n: int, omega: float, terms: int = None) -> PnEstimate:
    """
    The lattice sum (2 sin(w/2))^{2(n+1)} * sum_{|k| <= K} (w + 2 pi k)^{-2(n+1)}, with a bound on the omitted terms.
    """
    terms = default_config.lattice_terms if terms is None else terms
    if terms < 1:
        raise InvalidParameters('terms', terms, 'must be a positive integer')
    omega = float(omega)
    if math.remainder(omega, TWO_PI) == 0:
        return PnEstimate(1.0, 0.0)

    power = 2 * (n + 1)
    scale = (2 * math.sin(omega / 2)) ** power
    k = np.arange(-terms, terms + 1, dtype=float)
    value = scale * math.fsum((omega + TWO_PI * k) ** -power)
    if (gap := TWO_PI * terms - abs(omega)) > 0:
        tail = 2 * scale * gap ** -(power - 1) / (TWO_PI * (power - 1))
    else:
        tail = math.inf
    return PnEstimate(value, tail)


# endregion
