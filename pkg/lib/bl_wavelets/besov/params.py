"""
Besov parameters, coefficient grids, and the weighted sequence quasi-norm.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, NamedTuple, Union

import numpy as np

from ..exceptions import InvalidParameters
from ..reports import json_number

__all__ = ['BesovParams', 'Level', 'CoefficientGrid', 'lp_norm', 'lq_combine', 'sequence_norm', 'parse_exponent']
log = logging.getLogger(__name__)

Exponent = Union[float, int, str]


def parse_exponent(value: Exponent, name: str = 'p') -> float:
    """Accept a positive number, or ``inf`` / ``infinity``."""
    if isinstance(value, str):
        value = value.strip().lower()
        value = math.inf if value in {'inf', 'infinity', 'oo'} else value
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParameters(name, value, 'expected a positive number or inf') from None
    if not value > 0:
        raise InvalidParameters(name, value, 'must be > 0')
    return value


def _reciprocal(p: float) -> float:
    return 0.0 if math.isinf(p) else 1 / p


@dataclass(frozen=True)
class BesovParams:
    """
    The order of the wavelet system, and the smoothness ``s`` and exponents ``p, q`` in ``(0, inf]`` of the space.
    The smoothness must satisfy ``max(1/p, 1) - 1 - n < s < n + min(1/p, 1)``.
    """

    n: int
    s: float
    p: float = 2.0
    q: float = 2.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidParameters('n', self.n, 'must be a non-negative integer')
        object.__setattr__(self, 'p', parse_exponent(self.p, 'p'))
        object.__setattr__(self, 'q', parse_exponent(self.q, 'q'))
        object.__setattr__(self, 's', float(self.s))
        lo, hi = self.admissible_range(self.n, self.p)
        if not lo < self.s < hi:
            raise InvalidParameters('s', self.s, f'must satisfy {lo} < s < {hi} for n={self.n}, p={self.p}')

    @classmethod
    def admissible_range(cls, n: int, p: Exponent) -> tuple[float, float]:
        inv_p = _reciprocal(parse_exponent(p))
        return max(inv_p, 1) - 1 - n, n + min(inv_p, 1)

    @classmethod
    def midpoint(cls, n: int, p: Exponent = 2.0, q: Exponent = 2.0) -> BesovParams:
        """Parameters with ``s`` in the middle of the admissible range."""
        lo, hi = cls.admissible_range(n, p)
        return cls(n, (lo + hi) / 2, p, q)

    @property
    def inv_p(self) -> float:
        return _reciprocal(self.p)

    @property
    def level_exponent(self) -> float:
        """The exponent of the level weight ``2^(d * (s - 1/p + 1))``"""
        return self.s - self.inv_p + 1

    def level_weight(self, d: int) -> float:
        return 2.0 ** (d * self.level_exponent)

    def with_s(self, s: float) -> BesovParams:
        return BesovParams(self.n, s, self.p, self.q)

    def to_json(self) -> dict[str, Any]:
        return {'n': self.n, 's': self.s, 'p': json_number(self.p), 'q': json_number(self.q)}


def lp_norm(values, p: float) -> float:
    """The l^p quasi-norm of a finite sequence (the max for p = inf); 0 for an empty sequence."""
    values = np.abs(np.asarray(values, dtype=float))
    if values.size == 0:
        return 0.0
    elif math.isinf(p):
        return float(values.max())
    scale = values.max()
    if scale == 0:
        return 0.0
    return float(scale * np.sum((values / scale) ** p) ** (1 / p))


def lq_combine(terms, q: float) -> float:
    """Combine per-level terms with the l^q quasi-norm."""
    return lp_norm(terms, q)


class Level(NamedTuple):
    """Values for the consecutive shifts ``first, first + 1, ...`` of one level"""

    first: int
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    @property
    def taus(self) -> range:
        return range(self.first, self.first + len(self.values))

    def get(self, tau: int) -> float:
        index = tau - self.first
        return float(self.values[index]) if 0 <= index < len(self.values) else 0.0

    def restricted(self, lo: int, hi: int) -> Level:
        """Only the shifts in ``[lo, hi]``"""
        start, stop = max(lo, self.first), min(hi, self.first + len(self.values) - 1)
        if start > stop:
            return Level(start, np.zeros(0))
        return Level(start, self.values[start - self.first : stop - self.first + 1])


@dataclass
class CoefficientGrid:
    """
    Coefficients ``mu[d, tau]`` for levels ``d = -1, 0, ..., D``.

    :param levels: Mapping of level to the coefficients on that level
    :param max_level: The finest level D
    :param provenance: How the grid was obtained (``analysis`` or ``synthetic``)
    """

    levels: dict[int, Level] = field(default_factory=dict)
    max_level: int = 0
    provenance: str = 'synthetic'

    @classmethod
    def from_entries(
        cls, entries: Mapping[tuple[int, int], float], max_level: int = None, provenance: str = 'synthetic'
    ) -> CoefficientGrid:
        by_level: dict[int, dict[int, float]] = {}
        for (d, tau), value in entries.items():
            if d < -1:
                raise InvalidParameters('d', d, 'levels start at -1')
            by_level.setdefault(d, {})[tau] = value
        levels = {}
        for d, values in sorted(by_level.items()):
            first, last = min(values), max(values)
            dense = np.zeros(last - first + 1)
            for tau, value in values.items():
                dense[tau - first] = value
            levels[d] = Level(first, dense)
        if max_level is None:
            max_level = max(levels, default=0)
        return cls(levels, max(max_level, 0), provenance)

    def __getitem__(self, key: tuple[int, int]) -> float:
        d, tau = key
        try:
            return self.levels[d].get(tau)
        except KeyError:
            return 0.0

    def __iter__(self) -> Iterator[tuple[int, int, float]]:
        for d in sorted(self.levels):
            level = self.levels[d]
            for tau, value in zip(level.taus, level.values):
                yield d, tau, float(value)

    @property
    def is_empty(self) -> bool:
        return not any(len(level) for level in self.levels.values())

    def scaled(self, factor: float) -> CoefficientGrid:
        levels = {d: Level(level.first, level.values * factor) for d, level in self.levels.items()}
        return CoefficientGrid(levels, self.max_level, self.provenance)

    def max_difference(self, other: CoefficientGrid) -> float:
        keys = {(d, tau) for d, tau, _ in self}.union((d, tau) for d, tau, _ in other)
        return max((abs(self[key] - other[key]) for key in keys), default=0.0)

    def to_json(self) -> dict[str, Any]:
        return {
            'max_level': self.max_level,
            'provenance': self.provenance,
            'levels': {
                str(d): {'first': level.first, 'values': [json_number(v) for v in level.values]}
                for d, level in sorted(self.levels.items())
            },
        }


def sequence_norm(mu: CoefficientGrid, params: BesovParams) -> float:
    """``(sum_d (sum_tau |mu[d, tau]|^p)^(q/p))^(1/q)``, with the usual sup forms for p or q = inf"""
    terms = [lp_norm(mu.levels[d].values, params.p) for d in sorted(mu.levels)]
    return lq_combine(terms, params.q)
