"""
Piecewise polynomials on dyadic knots.

Each piece stores its coefficients in powers of the local variable ``x - knot_i``, and evaluation is right-continuous
at every knot.  Knots are exact :class:`DyadicRational` values, coefficients are floats.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import comb
from typing import TYPE_CHECKING, Any, Iterable, Sequence, Union

import numpy as np

from ..caching import cached_property
from ..exceptions import InvalidParameters, SerializationError
from .dyadic import DyadicRational
from .quadrature import gauss_legendre, gauss_order, chebyshev_unit_points, horner, horner_grid

if TYPE_CHECKING:
    from ..typing import DyadicLike, Real, WeightedTerms

__all__ = [
    'PiecewisePolynomial',
    'evaluate',
    'linear_combine',
    'translate_dilate',
    'differentiate',
    'inner_product',
    'moment',
    'sup_distance',
    'reflect',
    'restrict',
    'taylor_shift',
    'pair_with_translates',
]
log = logging.getLogger(__name__)

ZERO_THRESHOLD = 1e-15
EXACT_MATCH_RTOL = 1e-14


class PiecewisePolynomial:
    """
    An immutable piecewise polynomial.  ``pieces[i]`` holds the ascending coefficients of the polynomial on
    ``[knots[i], knots[i + 1])`` in the local variable ``x - knots[i]``; the function is 0 outside of
    ``[knots[0], knots[-1])``.
    """

    def __init__(self, knots: Sequence[DyadicLike], pieces: Union[np.ndarray, Sequence[Sequence[Real]]]):
        knots = tuple(map(DyadicRational.of, knots))
        pieces = np.array(pieces, dtype=float, ndmin=2)
        if not knots:
            knots, pieces = (), np.zeros((0, 1))
        elif len(knots) != pieces.shape[0] + 1:
            expected = f'expected {len(knots) - 1} pieces for {len(knots)} knots'
            raise InvalidParameters('pieces', pieces.shape[0], expected)
        elif any(a >= b for a, b in zip(knots, knots[1:])):
            raise InvalidParameters('knots', knots, 'knots must be strictly increasing')
        self.knots, self.pieces = _canonical(knots, pieces)
        self.pieces.flags.writeable = False

    @classmethod
    def zero(cls) -> PiecewisePolynomial:
        return cls((), ())

    @classmethod
    def _trusted(cls, knots: tuple[DyadicRational, ...], pieces: np.ndarray) -> PiecewisePolynomial:
        self = cls.__new__(cls)
        self.knots, self.pieces = _canonical(knots, pieces)
        self.pieces.flags.writeable = False
        return self

    def __repr__(self) -> str:
        if self.is_zero:
            return f'<{self.__class__.__name__}[zero]>'
        lo, hi = self.support
        return f'<{self.__class__.__name__}[support=[{lo}, {hi}), pieces={self.n_pieces}, degree={self.degree}]>'

    # region Properties

    @property
    def is_zero(self) -> bool:
        return not self.knots

    @property
    def n_pieces(self) -> int:
        return self.pieces.shape[0]

    @property
    def degree(self) -> int:
        return self.pieces.shape[1] - 1

    @property
    def support(self) -> tuple[DyadicRational, DyadicRational] | None:
        if not self.knots:
            return None
        return self.knots[0], self.knots[-1]

    @cached_property
    def float_knots(self) -> np.ndarray:
        knots = np.array([float(k) for k in self.knots], dtype=float)
        knots.flags.writeable = False
        return knots

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.float_knots)

    # endregion

    def __call__(self, x):
        return evaluate(self, x)

    # region Operators

    def __add__(self, other: PiecewisePolynomial) -> PiecewisePolynomial:
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return linear_combine([(1.0, self), (1.0, other)])

    def __sub__(self, other: PiecewisePolynomial) -> PiecewisePolynomial:
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return linear_combine([(1.0, self), (-1.0, other)])

    def __mul__(self, other: Real) -> PiecewisePolynomial:
        if isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self._trusted(self.knots, self.pieces * float(other))

    __rmul__ = __mul__

    def __neg__(self) -> PiecewisePolynomial:
        return self * -1.0

    def shifted(self, shift: DyadicLike) -> PiecewisePolynomial:
        """x -> f(x - shift)"""
        return translate_dilate(self, shift, 0)

    # endregion

    # region Serialization

    def to_json(self) -> dict[str, Any]:
        return {'knots': [k.to_json() for k in self.knots], 'pieces': self.pieces.tolist()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PiecewisePolynomial:
        try:
            knots = [DyadicRational.from_json(k) for k in data['knots']]
            pieces = data['pieces']
            return cls(knots, pieces if pieces else np.zeros((0, 1)))
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f'Invalid piecewise polynomial data: {e}') from e

    # endregion


# region Canonical Form


def _canonical(knots: tuple[DyadicRational, ...], pieces: np.ndarray) -> tuple[tuple[DyadicRational, ...], np.ndarray]:
    if not knots or pieces.shape[0] == 0:
        return (), np.zeros((0, 1))

    nonzero = np.flatnonzero(np.any(np.abs(pieces) >= ZERO_THRESHOLD, axis=1))
    if nonzero.size == 0:
        return (), np.zeros((0, 1))

    first, last = nonzero[0], nonzero[-1]
    pieces = pieces[first : last + 1]
    knots = knots[first : last + 2]
    columns = np.flatnonzero(np.any(pieces != 0, axis=0))
    width = columns[-1] + 1 if columns.size else 1
    return knots, np.ascontiguousarray(pieces[:, :width])


# endregion


@lru_cache(32)
def _pascal(size: int) -> np.ndarray:
    """``P[k, i] = C(i, k)``"""
    table = np.array([[comb(i, k) for i in range(size)] for k in range(size)], dtype=float)
    table.flags.writeable = False
    return table


def taylor_shift(coeffs: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """
    Re-expand polynomials about a new origin: row ``m`` of the result holds the coefficients of
    ``p_m(t + offsets[m])`` in powers of ``t``.
    """
    coeffs = np.atleast_2d(coeffs)
    size = coeffs.shape[1]
    if size == 1:
        return coeffs.copy()
    offsets = np.broadcast_to(np.asarray(offsets, dtype=float), (coeffs.shape[0],))
    exponents = np.arange(size)[None, :] - np.arange(size)[:, None]  # i - k
    mask = exponents >= 0
    powers = offsets[:, None, None] ** np.where(mask, exponents, 0)[None, :, :]
    matrix = powers * (_pascal(size) * mask)[None, :, :]
    return np.einsum('mki,mi->mk', matrix, coeffs)


def _coefficients_on(f: PiecewisePolynomial, starts: np.ndarray, size: int) -> np.ndarray:
    """Coefficients of ``f`` re-expanded about each of the given interval starts (zero outside the support)."""
    result = np.zeros((starts.size, size))
    if f.is_zero or starts.size == 0:
        return result
    index = np.searchsorted(f.float_knots, starts, side='right') - 1
    inside = (index >= 0) & (index < f.n_pieces)
    if inside.any():
        rows = index[inside]
        shifted = taylor_shift(f.pieces[rows], starts[inside] - f.float_knots[rows])
        result[inside, : f.pieces.shape[1]] = shifted
    return result


def evaluate(f: PiecewisePolynomial, x):
    """Evaluate ``f`` at a scalar or at every element of an array; 0 outside the support."""
    values = np.asarray(x, dtype=float)
    flat = values.reshape(-1)
    out = np.zeros(flat.shape)
    if not f.is_zero and flat.size:
        index = np.searchsorted(f.float_knots, flat, side='right') - 1
        inside = (index >= 0) & (index < f.n_pieces)
        rows = index[inside]
        out[inside] = horner(f.pieces[rows], flat[inside] - f.float_knots[rows])
    if values.ndim == 0:
        return float(out[0])
    return out.reshape(values.shape)


def linear_combine(terms: WeightedTerms) -> PiecewisePolynomial:
    """Return the canonical form of ``sum(weight * f for weight, f in terms)`` on the union of the input knots."""
    terms = [(float(w), f) for w, f in terms if w != 0 and not f.is_zero]
    if not terms:
        return PiecewisePolynomial.zero()
    elif len(terms) == 1:
        weight, f = terms[0]
        return f * weight

    knots = tuple(sorted(set().union(*(f.knots for _, f in terms))))
    size = max(f.pieces.shape[1] for _, f in terms)
    starts = np.array([float(k) for k in knots[:-1]])
    pieces = np.zeros((starts.size, size))
    for weight, f in terms:
        pieces += weight * _coefficients_on(f, starts, size)
    return PiecewisePolynomial._trusted(knots, pieces)


def translate_dilate(f: PiecewisePolynomial, shift: DyadicLike, log2_dilation: int) -> PiecewisePolynomial:
    """Return ``x -> f(2**log2_dilation * x - shift)``."""
    if f.is_zero:
        return f
    shift = DyadicRational.of(shift)
    knots = tuple((k + shift).scaled(-log2_dilation) for k in f.knots)
    if log2_dilation:
        scale = np.power(2.0, log2_dilation * np.arange(f.pieces.shape[1]))
        pieces = f.pieces * scale[None, :]
    else:
        pieces = f.pieces.copy()
    return PiecewisePolynomial._trusted(knots, pieces)


def differentiate(f: PiecewisePolynomial) -> PiecewisePolynomial:
    """The piecewise derivative; jumps at knots are ignored."""
    if f.is_zero or f.degree == 0:
        return PiecewisePolynomial.zero()
    pieces = f.pieces[:, 1:] * np.arange(1, f.pieces.shape[1])[None, :]
    return PiecewisePolynomial._trusted(f.knots, pieces)


def reflect(f: PiecewisePolynomial, axis: DyadicLike) -> PiecewisePolynomial:
    """Return ``x -> f(2 * axis - x)``, stored right-continuously (it differs from the exact mirror only at knots)."""
    if f.is_zero:
        return f
    twice = DyadicRational.of(axis) * 2
    knots = tuple(twice - k for k in reversed(f.knots))
    widths = f.widths[::-1]
    pieces = taylor_shift(f.pieces[::-1], widths)
    pieces *= (-1.0) ** np.arange(pieces.shape[1])[None, :]
    return PiecewisePolynomial._trusted(knots, pieces)


def restrict(f: PiecewisePolynomial, lo: DyadicLike, hi: DyadicLike) -> PiecewisePolynomial:
    """Return ``f`` multiplied by the indicator of ``[lo, hi)``."""
    lo, hi = DyadicRational.of(lo), DyadicRational.of(hi)
    if f.is_zero or lo >= hi or hi <= f.knots[0] or lo >= f.knots[-1]:
        return PiecewisePolynomial.zero()
    lo, hi = max(lo, f.knots[0]), min(hi, f.knots[-1])
    knots = (lo, *(k for k in f.knots if lo < k < hi), hi)
    starts = np.array([float(k) for k in knots[:-1]])
    return PiecewisePolynomial._trusted(knots, _coefficients_on(f, starts, f.pieces.shape[1]))


# region Integration


def _overlap_grid(f: PiecewisePolynomial, g: PiecewisePolynomial) -> np.ndarray | None:
    lo, hi = max(f.knots[0], g.knots[0]), min(f.knots[-1], g.knots[-1])
    if lo >= hi:
        return None
    knots = sorted({lo, hi}.union(k for k in f.knots + g.knots if lo < k < hi))
    return np.array([float(k) for k in knots])


def inner_product(f: PiecewisePolynomial, g: PiecewisePolynomial) -> float:
    """Exact integral of ``f * g``, by Gauss-Legendre quadrature on each interval of the merged knots."""
    if f.is_zero or g.is_zero or (grid := _overlap_grid(f, g)) is None:
        return 0.0
    starts, widths = grid[:-1], np.diff(grid)
    nodes, weights = gauss_legendre(gauss_order(f.degree + g.degree))
    t = widths[:, None] * nodes[None, :]
    f_vals = horner_grid(_coefficients_on(f, starts, f.pieces.shape[1]), t)
    g_vals = horner_grid(_coefficients_on(g, starts, g.pieces.shape[1]), t)
    return float(np.sum(widths * ((f_vals * g_vals) @ weights)))


def moment(f: PiecewisePolynomial, m: int) -> float:
    """Exact integral of ``x**m * f(x)``."""
    if m < 0:
        raise InvalidParameters('m', m, 'moments are only defined for non-negative integers')
    if f.is_zero:
        return 0.0
    nodes, weights = gauss_legendre(gauss_order(f.degree + m))
    widths = f.widths
    t = widths[:, None] * nodes[None, :]
    x = f.float_knots[:-1, None] + t
    values = horner_grid(f.pieces, t) * x**m
    return float(np.sum(widths * (values @ weights)))


def sup_distance(f: PiecewisePolynomial, g: PiecewisePolynomial, samples_per_piece: int) -> float:
    """
    The maximum of ``|f - g|`` over Chebyshev points of every merged piece (closures of the pieces are sampled, so
    one-sided limits at knots count).  Returns exactly 0 when the coefficients agree to a relative 1e-14.
    """
    diff = linear_combine([(1.0, f), (-1.0, g)])
    if diff.is_zero:
        return 0.0
    scale = max((np.max(np.abs(h.pieces)) for h in (f, g) if not h.is_zero), default=0.0)
    if np.max(np.abs(diff.pieces)) <= EXACT_MATCH_RTOL * scale:
        return 0.0
    if samples_per_piece < diff.degree + 1:
        log.debug(f'Raising {samples_per_piece=} to {diff.degree + 1} for degree={diff.degree}')
    points = chebyshev_unit_points(max(samples_per_piece, diff.degree + 1))
    t = diff.widths[:, None] * points[None, :]
    return float(np.max(np.abs(horner_grid(diff.pieces, t))))


# endregion


def pair_with_translates(
    f: PiecewisePolynomial, kernel: PiecewisePolynomial, log2_dilation: int
) -> tuple[int, np.ndarray]:
    """
    Compute ``<f, kernel(2**j * . - k)>`` for every integer ``k`` whose translate can meet the support of ``f``.

    The kernel must live on consecutive integer knots (B-splines and their derivatives do).  Returns the first ``k``
    and the array of pairings for consecutive ``k``.
    """
    if not all(k.is_integer() for k in kernel.knots):
        raise InvalidParameters('kernel', kernel, 'lattice pairings require a kernel with integer knots')
    if f.is_zero or kernel.is_zero:
        return 0, np.zeros(0)
    if any(b - a != 1 for a, b in zip(kernel.knots, kernel.knots[1:])):
        kernel = _unit_pieces(kernel)

    j = log2_dilation
    k0, k1 = int(kernel.knots[0]), int(kernel.knots[-1])
    a, b = f.knots[0].scaled(j), f.knots[-1].scaled(j)  # support of f on the lattice scale
    first = a.floor() - k1
    last = -((-b.numerator) >> b.scale) - k0  # ceil(b) - k0
    values = np.zeros(last - first + 1)

    cells = np.arange(a.floor(), -((-b.numerator) >> b.scale) + 1, dtype=float) / 2.0**j
    grid = np.union1d(f.float_knots, cells[(cells > f.float_knots[0]) & (cells < f.float_knots[-1])])
    starts, widths = grid[:-1], np.diff(grid)
    nodes, weights = gauss_legendre(gauss_order(f.degree + kernel.degree))
    t = widths[:, None] * nodes[None, :]
    x = starts[:, None] + t
    f_weighted = evaluate(f, x) * (widths[:, None] * weights[None, :])

    cell = np.floor(starts * 2.0**j).astype(np.int64)
    u = x * 2.0**j - cell[:, None]
    for p in range(kernel.n_pieces):
        kernel_vals = horner_grid(np.repeat(kernel.pieces[p : p + 1], u.shape[0], axis=0), u)
        shift = cell - (k0 + p)
        np.add.at(values, shift - first, np.sum(f_weighted * kernel_vals, axis=1))
    return first, values


def _unit_pieces(kernel: PiecewisePolynomial) -> PiecewisePolynomial:
    k0, k1 = int(kernel.knots[0]), int(kernel.knots[-1])
    knots = tuple(DyadicRational(k) for k in range(k0, k1 + 1))
    starts = np.arange(k0, k1, dtype=float)
    return PiecewisePolynomial._trusted(knots, _coefficients_on(kernel, starts, kernel.pieces.shape[1]))
