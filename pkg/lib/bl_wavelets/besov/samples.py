"""
Ingestion of sampled functions as piecewise linear interpolants on dyadic sample points.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Sequence

import numpy as np

from ..exceptions import InvalidParameters
from ..poly_core import DyadicRational, PiecewisePolynomial

if TYPE_CHECKING:
    from ..typing import DyadicLike, Real

__all__ = ['interpolate_samples']
log = logging.getLogger(__name__)


def interpolate_samples(xs: Sequence[DyadicLike], values: Sequence[Real]) -> PiecewisePolynomial:
    """
    The piecewise linear function through ``(x_i, v_i)`` on ``[x_0, x_last)``, and 0 elsewhere.  The sample points
    must be dyadic rationals in strictly increasing order.
    """
    if len(xs) != len(values):
        raise InvalidParameters('values', len(values), f'expected one value per sample point ({len(xs)})')
    elif len(xs) < 2:
        raise InvalidParameters('xs', list(xs), 'at least 2 sample points are required')
    try:
        knots = [DyadicRational.of(x) for x in xs]
    except (TypeError, ValueError) as e:
        raise InvalidParameters('xs', list(xs), f'sample points must be dyadic rationals: {e}') from None
    if any(b <= a for a, b in zip(knots, knots[1:])):
        raise InvalidParameters('xs', list(xs), 'sample points must be strictly increasing')

    values = np.asarray(values, dtype=float)
    widths = np.diff([float(k) for k in knots])
    slopes = np.diff(values) / widths
    log.debug(f'Interpolating {len(knots)} samples on [{knots[0]}, {knots[-1]}]')
    return PiecewisePolynomial(knots, np.column_stack([values[:-1], slopes]))
