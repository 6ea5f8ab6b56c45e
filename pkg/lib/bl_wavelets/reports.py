"""
Verification report containers.

Checks never raise on failure; they are collected into a :class:`VerificationReport`, which records the tolerance
block that was in effect so that a failed report is self-describing.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

__all__ = ['CheckResult', 'VerificationReport', 'SCHEMA_VERSION', 'json_number']
log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def json_number(value: Optional[float]) -> Any:
    """Floats that JSON cannot represent are emitted as strings (``"inf"``, ``"nan"``)."""
    if value is None or isinstance(value, (bool, int)):
        return value
    value = float(value)
    return value if math.isfinite(value) else repr(value)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ''

    def __str__(self) -> str:
        status = 'PASS' if self.passed else 'FAIL'
        if self.value is None:
            return f'[{status}] {self.name} {self.detail}'.rstrip()
        return f'[{status}] {self.name}: {self.value:.3e} (tolerance={self.tolerance:.1e}) {self.detail}'.rstrip()

    def to_json(self) -> dict[str, Any]:
        data = {'name': self.name, 'passed': self.passed}
        if self.value is not None:
            data['value'] = json_number(self.value)
            data['tolerance'] = json_number(self.tolerance)
        if self.detail:
            data['detail'] = self.detail
        return data


@dataclass
class VerificationReport:
    name: str
    tolerances: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def add_residual(self, name: str, value: float, tolerance: float, detail: str = '') -> CheckResult:
        """Record a check that passes when ``value <= tolerance``."""
        passed = bool(value <= tolerance)  # NaN fails
        return self._add(CheckResult(name, passed, float(value), float(tolerance), detail))

    def add_flag(self, name: str, passed: bool, detail: str = '') -> CheckResult:
        return self._add(CheckResult(name, bool(passed), detail=detail))

    def _add(self, check: CheckResult) -> CheckResult:
        if not check.passed:
            log.warning(f'{self.name}: {check}')
        else:
            log.debug(f'{self.name}: {check}')
        self.checks.append(check)
        return check

    def merge(self, other: VerificationReport, prefix: str = None) -> VerificationReport:
        prefix = f'{prefix or other.name}.'
        for check in other.checks:
            renamed = CheckResult(prefix + check.name, check.passed, check.value, check.tolerance, check.detail)
            self.checks.append(renamed)
        return self

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            'schema': SCHEMA_VERSION,
            'report': self.name,
            'passed': self.passed,
            'checks': [check.to_json() for check in self.checks],
            'tolerances': {key: json_number(val) for key, val in self.tolerances.items()},
            **self.extra,
        }
