"""
Spline wavelet exceptions

:author: Doug Skrypa
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Iterable

if TYPE_CHECKING:
    from .reports import VerificationReport

__all__ = [
    'BLWaveletError',
    'InvalidParameters',
    'DomainError',
    'ShiftOperatorError',
    'RootFindingError',
    'VerificationFailed',
    'SerializationError',
]


class BLWaveletError(Exception):
    """Base exception for errors in bl_wavelets"""


class InvalidParameters(BLWaveletError, ValueError):
    """Raised when an operation is given parameters outside of its documented domain"""

    def __init__(self, name: str, value: Any, reason: str):
        self.name = name
        self.value = value
        self.reason = reason

    def __str__(self) -> str:
        return f'Invalid {self.name}={self.value!r}: {self.reason}'


class DomainError(InvalidParameters):
    """Raised when a root alpha does not satisfy alpha > 1"""


class ShiftOperatorError(InvalidParameters):
    """Raised when a shift operator references a factor that the series' order does not have"""


class RootFindingError(BLWaveletError):
    """Raised when the Euler-Frobenius roots could not be isolated or refined"""

    def __init__(self, n: int, message: str, found: Iterable[float] = ()):
        self.n = n
        self.message = message
        self.found = tuple(found)

    def __str__(self) -> str:
        return f'Unable to find roots for {self.n=}: {self.message} (found={self.found})'


class VerificationFailed(BLWaveletError):
    """Raised when a verification report contains at least one failed check"""

    def __init__(self, report: VerificationReport):
        self.report = report

    def __str__(self) -> str:
        failed = ', '.join(check.name for check in self.report.failures)
        return f'Verification {self.report.name!r} failed: {failed}'


class SerializationError(BLWaveletError):
    """Raised when serialized input does not describe a valid object"""
