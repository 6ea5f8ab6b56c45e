"""
The choice of sign and per-factor t_j that selects one scaling function / wavelet pair.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

from ..caching import cached_property
from ..enums import Sign, TChoice
from ..exceptions import InvalidParameters
from ..poly_core import DyadicRational

__all__ = ['WaveletSpec', 'iter_specs']
log = logging.getLogger(__name__)

SignLike = Union[Sign, str, int]


@dataclass(frozen=True)
class WaveletSpec:
    """
    :param n: The B-spline order
    :param sign: The global +/- convention
    :param tchoice: One entry per factor; ``USE_R`` selects t_j = r_j and ``USE_INV_R`` selects t_j = 1/r_j
    """

    n: int
    sign: Sign = Sign.PLUS
    tchoice: tuple[TChoice, ...] = None

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise InvalidParameters('n', self.n, 'must be a non-negative integer')
        object.__setattr__(self, 'sign', _normalize_sign(self.sign))
        if self.tchoice is None:
            tchoice = (TChoice.USE_R,) * self.n
        else:
            tchoice = tuple(_normalize_tchoice(t) for t in self.tchoice)
        if len(tchoice) != self.n:
            raise InvalidParameters('tchoice', self.tchoice, f'expected {self.n} entries, found {len(tchoice)}')
        object.__setattr__(self, 'tchoice', tchoice)

    @classmethod
    def all_r(cls, n: int, sign: SignLike = Sign.PLUS) -> WaveletSpec:
        return cls(n, sign)

    @classmethod
    def all_inv_r(cls, n: int, sign: SignLike = Sign.PLUS) -> WaveletSpec:
        return cls(n, sign, (TChoice.USE_INV_R,) * n)

    @classmethod
    def parse(cls, n: int, sign: SignLike = '+', tchoice: Union[str, Sequence[str], None] = None) -> WaveletSpec:
        """
        Build a spec from CLI-style values.  ``tchoice`` may be a comma-separated string like ``r,invr``; a single
        value is repeated for every factor.
        """
        if tchoice is None or tchoice == '':
            return cls(n, sign)
        if isinstance(tchoice, str):
            tchoice = [part.strip() for part in tchoice.split(',') if part.strip()]
        if len(tchoice) == 1 and n != 1:
            tchoice = list(tchoice) * n
        return cls(n, sign, tuple(tchoice))

    def __str__(self) -> str:
        ts = ','.join(t.value for t in self.tchoice)
        return f'n={self.n}{self.sign.symbol}[{ts}]'

    # region Derived Values

    @property
    def sigma(self) -> int:
        return self.sign.value

    @cached_property
    def j_r(self) -> tuple[int, ...]:
        """Indices j (0-based) with t_j = r_j"""
        return tuple(j for j, t in enumerate(self.tchoice) if t is TChoice.USE_R)

    @cached_property
    def j_inv_r(self) -> tuple[int, ...]:
        """Indices j (0-based) with t_j = 1/r_j"""
        return tuple(j for j, t in enumerate(self.tchoice) if t is TChoice.USE_INV_R)

    @property
    def c_r(self) -> int:
        return len(self.j_r)

    @property
    def c_inv_r(self) -> int:
        return len(self.j_inv_r)

    @property
    def phi_centering(self) -> DyadicRational:
        """The translation that moves the uncentred scaling function onto its centred position."""
        return DyadicRational(-self.sigma * self.c_inv_r)

    @property
    def psi_centering(self) -> DyadicRational:
        """The translation that moves the uncentred wavelet onto its centred position."""
        return DyadicRational(self.sigma * self.c_inv_r, 1)

    # endregion

    def opposite(self) -> WaveletSpec:
        """The spec with every t_j inverted and the opposite sign."""
        return WaveletSpec(self.n, -self.sign, tuple(t.inverted for t in self.tchoice))

    def to_json(self) -> dict[str, Any]:
        return {'n': self.n, 'sign': self.sign.symbol, 'tchoice': [t.value for t in self.tchoice]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> WaveletSpec:
        return cls(data['n'], data['sign'], tuple(data['tchoice']))


def _normalize_sign(sign: SignLike) -> Sign:
    try:
        return Sign(sign)
    except ValueError:
        raise InvalidParameters('sign', sign, 'expected one of: +, -') from None


def _normalize_tchoice(value: Union[TChoice, str]) -> TChoice:
    try:
        return TChoice(value)
    except ValueError:
        raise InvalidParameters('tchoice', value, 'expected one of: r, invr') from None


def iter_specs(n: int, sign: SignLike = Sign.PLUS) -> Iterable[WaveletSpec]:
    """All 2^n specs of order n with the given sign."""
    for mask in range(2**n):
        yield WaveletSpec(n, sign, tuple(TChoice.USE_INV_R if mask >> j & 1 else TChoice.USE_R for j in range(n)))
