"""
Enums for the spline wavelet package.

:author: Doug Skrypa
"""

from __future__ import annotations

from enum import Enum
from typing import Type

__all__ = ['Sign', 'TChoice', 'SystemKind', 'SeriesKind', 'NormKind', 'OutputFormat', 'ShiftKind']

# fmt: off
SIGN_ALIASES = {'+': 'PLUS', '-': 'MINUS', 'p': 'PLUS', 'm': 'MINUS', 'plus': 'PLUS', 'minus': 'MINUS'}
TCHOICE_ALIASES = {'r': 'USE_R', 'invr': 'USE_INV_R', '1/r': 'USE_INV_R', 'inv': 'USE_INV_R', 'inv_r': 'USE_INV_R'}
# fmt: on


class MissingMixin:
    __aliases = None

    def __init_subclass__(cls, aliases: dict[str, str] = None):
        cls.__aliases = aliases

    @classmethod
    def _missing_(cls: Type[Enum], value):
        if not isinstance(value, str):
            return None
        if aliases := cls.__aliases:  # noqa
            try:
                return cls[aliases[value.lower()]]
            except KeyError:
                pass
        try:
            return cls[value.upper().replace(' ', '_').replace('-', '_')]
        except KeyError:
            return None


class Sign(MissingMixin, Enum, aliases=SIGN_ALIASES):
    """The global +/- convention shared by every factor of a scaling function / wavelet pair."""

    PLUS = 1
    MINUS = -1

    @property
    def symbol(self) -> str:
        return '+' if self is Sign.PLUS else '-'

    def __neg__(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class TChoice(MissingMixin, Enum, aliases=TCHOICE_ALIASES):
    USE_R = 'r'
    USE_INV_R = 'invr'

    @property
    def inverted(self) -> TChoice:
        return TChoice.USE_INV_R if self is TChoice.USE_R else TChoice.USE_R


class ShiftKind(MissingMixin, Enum):
    S = 'S'  # factors with t_j = r_j
    R = 'R'  # factors with t_j = 1/r_j


class SeriesKind(MissingMixin, Enum):
    PHI = 'phi'
    PSI = 'psi'


class SystemKind(MissingMixin, Enum):
    PHI = 'phi'
    PSI = 'psi'
    CROSS = 'cross'


class NormKind(MissingMixin, Enum):
    STAR = 'star'
    CIRC = 'circ'
    BOTH = 'both'
    MODULUS = 'modulus'


class OutputFormat(MissingMixin, Enum):
    JSON = 'json'
    CSV = 'csv'
    TABLE = 'table'
