from __future__ import annotations

from fractions import Fraction
from os import PathLike as _PathLike
from typing import TYPE_CHECKING, Union, Sequence, Iterable

if TYPE_CHECKING:
    from .poly_core.dyadic import DyadicRational
    from .poly_core.piecewise import PiecewisePolynomial

__all__ = ['Real', 'PathLike', 'DyadicLike', 'Interval', 'WeightedTerms', 'TChoiceLike']

Real = Union[int, float]
PathLike = Union[str, _PathLike]
DyadicLike = Union['DyadicRational', int, float, Fraction]
Interval = tuple['DyadicLike', 'DyadicLike']
WeightedTerms = Iterable[tuple[Real, 'PiecewisePolynomial']]
TChoiceLike = Union[str, Sequence[str]]
