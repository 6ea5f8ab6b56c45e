"""
Finite weighted sums of dilated B-spline translates.

A :class:`TranslateSeries` stands for the function ``x -> sum_k w_k * B_n(2**d * x - k)``; every scaling function,
wavelet and localised combination in this package is one of these, and all of the operator algebra acts on the
weight map.  Materialization into a :class:`PiecewisePolynomial` happens on demand.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import TYPE_CHECKING, Any, Iterable, Iterator, Mapping, Optional

import numpy as np

from ..bspline import bspline, two_scale_expand
from ..exceptions import InvalidParameters, SerializationError
from ..poly_core import DyadicRational, PiecewisePolynomial, linear_combine, translate_dilate, restrict

if TYPE_CHECKING:
    from ..typing import DyadicLike, Interval, Real

__all__ = ['TranslateSeries', 'series_to_polynomial', 'window_tail_mass', 'refine_series']
log = logging.getLogger(__name__)


class TranslateSeries:
    """
    :param n: The order of the B-spline every term is a translate of
    :param log2_dilation: The dilation exponent ``d`` shared by every term
    :param terms: Mapping of shift ``k`` to weight ``w_k``
    :param epsilon: The truncation threshold that was used to build the series
    :param discarded_mass: An upper bound for the sum of ``|w|`` over all terms that were truncated or pruned away
    """

    __slots__ = ('n', 'log2_dilation', 'epsilon', 'discarded_mass', '_terms')

    def __init__(
        self,
        n: int,
        log2_dilation: int,
        terms: Mapping[DyadicLike, Real],
        epsilon: float,
        discarded_mass: float = 0.0,
    ):
        if n < 0:
            raise InvalidParameters('n', n, 'must be a non-negative integer')
        self.n = n
        self.log2_dilation = log2_dilation
        self.epsilon = epsilon
        self.discarded_mass = discarded_mass
        merged = defaultdict(float)
        for shift, weight in terms.items():
            merged[DyadicRational.of(shift)] += float(weight)
        self._terms = {shift: merged[shift] for shift in sorted(merged) if merged[shift] != 0}

    @classmethod
    def from_lattice(
        cls,
        n: int,
        log2_dilation: int,
        first: int,
        weights: np.ndarray,
        epsilon: float,
        discarded_mass: float = 0.0,
        prune_ratio: float = 0.0,
    ) -> TranslateSeries:
        """
        Build a series from dense weights on the consecutive integer shifts ``first, first + 1, ...``.  Weights with
        ``|w| < prune_ratio * epsilon * max|w|`` are dropped, and their mass is added to ``discarded_mass``.
        """
        weights = np.asarray(weights, dtype=float)
        magnitude = np.abs(weights)
        floor = prune_ratio * epsilon * magnitude.max(initial=0.0)
        keep = magnitude >= floor if floor > 0 else magnitude > 0
        pruned = float(magnitude[~keep].sum())
        if pruned:
            log.debug(f'Pruned {np.count_nonzero(~keep & (magnitude > 0))} terms with {pruned=:.3e} below {floor=:.3e}')
        self = cls.__new__(cls)
        self.n = n
        self.log2_dilation = log2_dilation
        self.epsilon = epsilon
        self.discarded_mass = discarded_mass + pruned
        self._terms = {DyadicRational(first + int(i)): float(weights[i]) for i in np.flatnonzero(keep)}
        return self

    def __repr__(self) -> str:
        return (
            f'<{self.__class__.__name__}[n={self.n}, d={self.log2_dilation}, terms={len(self)},'
            f' epsilon={self.epsilon:.1e}, discarded={self.discarded_mass:.2e}]>'
        )

    # region Container Methods

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[DyadicRational]:
        return iter(self._terms)

    def __getitem__(self, shift: DyadicLike) -> float:
        return self._terms.get(DyadicRational.of(shift), 0.0)

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict[DyadicRational, float]:
        return dict(self._terms)

    @property
    def shifts(self) -> tuple[DyadicRational, ...]:
        return tuple(self._terms)

    @property
    def weights(self) -> np.ndarray:
        return np.fromiter(self._terms.values(), dtype=float, count=len(self._terms))

    @property
    def max_abs(self) -> float:
        return max(map(abs, self._terms.values()), default=0.0)

    @property
    def is_integer_lattice(self) -> bool:
        return all(shift.is_integer() for shift in self._terms)

    def dense(self) -> tuple[int, np.ndarray]:
        """The weights on consecutive integer shifts, starting from the returned first shift."""
        if not self._terms:
            return 0, np.zeros(0)
        elif not self.is_integer_lattice:
            raise InvalidParameters('series', self, 'dense weights require integer shifts')
        first, last = int(self.shifts[0]), int(self.shifts[-1])
        values = np.zeros(last - first + 1)
        for shift, weight in self._terms.items():
            values[int(shift) - first] = weight
        return first, values

    # endregion

    @property
    def support(self) -> Optional[Interval]:
        """The interval (in x) outside of which every stored term vanishes."""
        if not self._terms:
            return None
        lo, hi = self.shifts[0], self.shifts[-1] + self.n + 1
        return lo.scaled(-self.log2_dilation), hi.scaled(-self.log2_dilation)

    # region Algebra

    def _derived(self, terms: Mapping[DyadicRational, float], discarded_mass: float = None) -> TranslateSeries:
        discarded = self.discarded_mass if discarded_mass is None else discarded_mass
        return self.__class__(self.n, self.log2_dilation, terms, self.epsilon, discarded)

    def translated(self, offset: DyadicLike) -> TranslateSeries:
        """x -> f(x - offset)"""
        offset = DyadicRational.of(offset).scaled(self.log2_dilation)
        return self._derived({shift + offset: w for shift, w in self._terms.items()})

    def scaled(self, factor: Real) -> TranslateSeries:
        factor = float(factor)
        return self._derived({s: w * factor for s, w in self._terms.items()}, self.discarded_mass * abs(factor))

    def __mul__(self, factor: Real) -> TranslateSeries:
        return self.scaled(factor)

    __rmul__ = __mul__

    def __neg__(self) -> TranslateSeries:
        return self.scaled(-1)

    def __add__(self, other: TranslateSeries) -> TranslateSeries:
        return self.combine([(1, self), (1, other)])

    def __sub__(self, other: TranslateSeries) -> TranslateSeries:
        return self.combine([(1, self), (-1, other)])

    @classmethod
    def combine(cls, terms: Iterable[tuple[Real, TranslateSeries]]) -> TranslateSeries:
        """The weighted sum of series that share the same order and dilation (never pruned)."""
        terms = list(terms)
        if not terms:
            raise InvalidParameters('terms', terms, 'at least one series is required')
        n, d = terms[0][1].n, terms[0][1].log2_dilation
        merged = defaultdict(float)
        discarded, epsilon = 0.0, 0.0
        for coeff, series in terms:
            if series.n != n or series.log2_dilation != d:
                raise InvalidParameters('terms', series, f'expected n={n} and d={d} for every series')
            coeff = float(coeff)
            for shift, weight in series._terms.items():
                merged[shift] += coeff * weight
            discarded += abs(coeff) * series.discarded_mass
            epsilon = max(epsilon, series.epsilon)
        return cls(n, d, merged, epsilon, discarded)

    # endregion

    def closeness(self, other: TranslateSeries) -> float:
        """The largest weight difference over the union of both shift sets."""
        if (self.n, self.log2_dilation) != (other.n, other.log2_dilation):
            return float('inf')
        shifts = set(self._terms).union(other._terms)
        return max((abs(self[s] - other[s]) for s in shifts), default=0.0)

    # region Serialization

    def to_json(self) -> dict[str, Any]:
        return {
            'n': self.n,
            'log2_dilation': self.log2_dilation,
            'epsilon': self.epsilon,
            'discarded_mass': self.discarded_mass,
            'terms': [[shift.to_json(), weight] for shift, weight in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> TranslateSeries:
        try:
            terms = {DyadicRational.from_json(shift): float(weight) for shift, weight in data['terms']}
            return cls(
                int(data['n']),
                int(data['log2_dilation']),
                terms,
                float(data['epsilon']),
                float(data.get('discarded_mass', 0.0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f'Invalid translate series data: {e}') from e

    # endregion


def series_to_polynomial(series: TranslateSeries, window: Interval = None) -> PiecewisePolynomial:
    """
    Materialize the series, optionally restricted to ``[window[0], window[1])``.  Translates whose shifts share the
    same fractional part are summed as one lattice convolution against the pieces of B_n.
    """
    if not len(series):
        return PiecewisePolynomial.zero()

    base = bspline(series.n)
    groups: dict[DyadicRational, dict[int, float]] = defaultdict(dict)
    for shift, weight in series.items():
        whole = shift.floor()
        groups[shift - whole][whole] = weight

    parts = []
    for offset, weights in groups.items():
        first, last = min(weights), max(weights)
        dense = np.zeros(last - first + 1)
        for k, w in weights.items():
            dense[k - first] = w
        pieces = np.zeros((dense.size + series.n, base.pieces.shape[1]))
        for p in range(base.n_pieces):
            pieces[p : p + dense.size] += dense[:, None] * base.pieces[p][None, :]
        start = offset + first
        knots = tuple(start + j for j in range(pieces.shape[0] + 1))
        lattice = PiecewisePolynomial._trusted(knots, pieces)
        parts.append((1.0, translate_dilate(lattice, 0, series.log2_dilation)))

    result = linear_combine(parts)
    if window is not None:
        result = restrict(result, *window)
        log.debug(f'Materialized {series} on {window=} with tail mass={window_tail_mass(series, window):.3e}')
    return result


def window_tail_mass(series: TranslateSeries, window: Interval) -> float:
    """
    The sum of ``|w|`` over the translates that are not contained in the window, which bounds the sup norm of the
    part of the series that the window cuts off (``0 <= B_n <= 1``).
    """
    lo, hi = (DyadicRational.of(v).scaled(series.log2_dilation) for v in window)
    width = series.n + 1
    return sum(abs(w) for shift, w in series.items() if shift < lo or shift + width > hi)


def refine_series(series: TranslateSeries) -> TranslateSeries:
    """The same function written in terms of ``B_n(2**(d + 1) * x - k)``, by the two-scale relation."""
    mask = two_scale_expand(series.n)
    terms = defaultdict(float)
    for shift, weight in series.items():
        doubled = shift * 2
        for j, coeff in mask:
            terms[doubled + j] += weight * coeff
    return TranslateSeries(series.n, series.log2_dilation + 1, terms, series.epsilon, series.discarded_mass)
