"""
Exact dyadic rationals (numerator / 2^scale) used for every knot location and translation.

:author: Doug Skrypa
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Integral
from typing import TYPE_CHECKING, Union

from ..exceptions import InvalidParameters

if TYPE_CHECKING:
    from ..typing import DyadicLike

__all__ = ['DyadicRational', 'dyadic', 'HALF']


@total_ordering
class DyadicRational:
    """
    A number of the form ``numerator / 2**scale`` kept in canonical form (odd numerator, or scale 0).  Instances are
    immutable and hashable; equal values always have identical fields.
    """

    __slots__ = ('numerator', 'scale')

    numerator: int
    scale: int

    def __init__(self, numerator: int, scale: int = 0):
        if scale < 0:
            numerator, scale = numerator << -scale, 0
        elif numerator == 0:
            scale = 0
        else:
            trailing = (numerator & -numerator).bit_length() - 1
            if (drop := min(trailing, scale)) > 0:
                numerator >>= drop
                scale -= drop
        object.__setattr__(self, 'numerator', int(numerator))
        object.__setattr__(self, 'scale', int(scale))

    def __setattr__(self, key, value):
        raise AttributeError(f'{self.__class__.__name__} objects are immutable')

    def __reduce__(self):
        return self.__class__, (self.numerator, self.scale)

    @classmethod
    def of(cls, value: DyadicLike) -> DyadicRational:
        """Convert an int, Fraction with a power of 2 denominator, float, or DyadicRational to a DyadicRational."""
        if isinstance(value, DyadicRational):
            return value
        elif isinstance(value, Integral):
            return cls(int(value), 0)
        elif isinstance(value, Fraction):
            return cls._from_ratio(value.numerator, value.denominator, value)
        elif isinstance(value, float):
            if not math.isfinite(value):
                raise InvalidParameters('value', value, 'only finite values can be represented as dyadic rationals')
            return cls._from_ratio(*value.as_integer_ratio(), value)
        raise TypeError(f'Unable to convert {value!r} of type={type(value).__name__} to a {cls.__name__}')

    @classmethod
    def _from_ratio(cls, numerator: int, denominator: int, orig) -> DyadicRational:
        if denominator & (denominator - 1):
            raise InvalidParameters('value', orig, 'the denominator is not a power of 2')
        return cls(numerator, denominator.bit_length() - 1)

    # region Conversion

    def __float__(self) -> float:
        return math.ldexp(self.numerator, -self.scale) if self.numerator.bit_length() < 1000 else float(self.fraction)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.scale)

    def is_integer(self) -> bool:
        return self.scale == 0

    def __int__(self) -> int:
        if self.scale:
            raise ValueError(f'{self} is not an integer')
        return self.numerator

    def floor(self) -> int:
        return self.numerator >> self.scale

    def to_json(self) -> list[int]:
        return [self.numerator, self.scale]

    @classmethod
    def from_json(cls, data: list[int]) -> DyadicRational:
        numerator, scale = data
        return cls(int(numerator), int(scale))

    # endregion

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.numerator}, {self.scale})'

    def __str__(self) -> str:
        return str(self.numerator) if self.scale == 0 else f'{self.numerator}/{1 << self.scale}'

    def __hash__(self) -> int:
        return hash((self.numerator, self.scale))

    # region Arithmetic

    def _common(self, other: DyadicRational) -> tuple[int, int, int]:
        scale = max(self.scale, other.scale)
        return self.numerator << (scale - self.scale), other.numerator << (scale - other.scale), scale

    def __add__(self, other: DyadicLike) -> DyadicRational:
        try:
            other = DyadicRational.of(other)
        except TypeError:
            return NotImplemented
        a, b, scale = self._common(other)
        return DyadicRational(a + b, scale)

    __radd__ = __add__

    def __sub__(self, other: DyadicLike) -> DyadicRational:
        try:
            other = DyadicRational.of(other)
        except TypeError:
            return NotImplemented
        a, b, scale = self._common(other)
        return DyadicRational(a - b, scale)

    def __rsub__(self, other: DyadicLike) -> DyadicRational:
        try:
            return DyadicRational.of(other) - self
        except TypeError:
            return NotImplemented

    def __neg__(self) -> DyadicRational:
        return DyadicRational(-self.numerator, self.scale)

    def __abs__(self) -> DyadicRational:
        return DyadicRational(abs(self.numerator), self.scale)

    def __mul__(self, other: DyadicLike) -> DyadicRational:
        try:
            other = DyadicRational.of(other)
        except TypeError:
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.scale + other.scale)

    __rmul__ = __mul__

    def scaled(self, log2_factor: int) -> DyadicRational:
        """Multiply by ``2**log2_factor`` (exact for any sign of the exponent)."""
        return DyadicRational(self.numerator, self.scale - log2_factor)

    # endregion

    # region Comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, DyadicRational):
            return self.numerator == other.numerator and self.scale == other.scale
        elif isinstance(other, (Integral, Fraction)):
            return self.fraction == other
        elif isinstance(other, float):
            return math.isfinite(other) and self.fraction == Fraction(other)
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, DyadicRational):
            a, b, _ = self._common(other)
            return a < b
        elif isinstance(other, (Integral, Fraction, float)):
            return self.fraction < other
        return NotImplemented

    def __bool__(self) -> bool:
        return self.numerator != 0

    # endregion


def dyadic(value: Union[DyadicLike, str]) -> DyadicRational:
    """Parse ``value`` as a dyadic rational; strings may be integers, decimals, or ``a/b`` fractions."""
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError as e:
            raise InvalidParameters('value', value, 'not a number') from e
    return DyadicRational.of(value)


HALF = DyadicRational(1, 1)
