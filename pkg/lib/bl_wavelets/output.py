"""
Serialization of results: deterministic JSON, ``x,value`` CSV, and plain text tables; plus function input parsing.

:author: Doug Skrypa
"""

from __future__ import annotations

import csv
import json
import logging
import os
from io import StringIO
from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import TYPE_CHECKING, Any, Iterable, Mapping, Sequence
from unicodedata import normalize

from wcwidth import wcswidth

from .besov import interpolate_samples
from .exceptions import InvalidParameters, SerializationError
from .poly_core import PiecewisePolynomial
from .reports import SCHEMA_VERSION
from .wavelets import TranslateSeries, series_to_polynomial

if TYPE_CHECKING:
    from .typing import PathLike, Real

__all__ = [
    'dumps_json',
    'format_csv',
    'format_table',
    'mono_width',
    'write_atomic',
    'emit',
    'load_function',
    'parse_samples_csv',
]
log = logging.getLogger(__name__)


# region Formatting


def dumps_json(payload: Mapping[str, Any]) -> str:
    """Floats are written with ``repr``, so they round-trip exactly."""
    return json.dumps({**payload, 'schema': SCHEMA_VERSION}, indent=4, sort_keys=True, allow_nan=False) + '\n'


def format_csv(rows: Iterable[tuple[Real, Real]]) -> str:
    lines = ['x,value']
    lines.extend(f'{float(x)!r},{float(v)!r}' for x, v in rows)
    return '\n'.join(lines) + '\n'


def mono_width(text: str) -> int:
    return wcswidth(normalize('NFC', text))


def format_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    rows = [[_cell(v) for v in row] for row in rows]
    headers = list(headers)
    widths = [mono_width(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], mono_width(cell))

    def _line(cells: Sequence[str]) -> str:
        return '  '.join(cell + ' ' * (width - mono_width(cell)) for cell, width in zip(cells, widths)).rstrip()

    lines = [_line(headers), _line(['-' * w for w in widths])]
    lines.extend(_line(row) for row in rows)
    return '\n'.join(lines) + '\n'


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f'{value:.17g}'
    elif value is None:
        return '-'
    return str(value)


# endregion

# region Writing


def write_atomic(path: PathLike, text: str):
    """Write the text to a temp file in the destination directory, then move it into place."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    with NamedTemporaryFile('w', encoding='utf-8', newline='', dir=path.parent, delete=False, suffix='.tmp') as f:
        tmp_path = Path(f.name)
        f.write(text)
    try:
        os.replace(tmp_path, path)
    except OSError:
        tmp_path.unlink(missing_ok=True)
        raise
    log.debug(f'Wrote {len(text):,d} characters to {path.as_posix()}')


def emit(text: str, path: PathLike = None, stream=None):
    if path is None:
        print(text, end='', file=stream)
    else:
        write_atomic(path, text)


# endregion

# region Input


def load_function(path: PathLike) -> PiecewisePolynomial:
    """
    Load a function from a JSON file (a piecewise polynomial, a translate series, or the output of ``build``), or from
    a ``x,value`` CSV file of samples, which is interpolated linearly.
    """
    path = Path(path)
    try:
        text = path.read_text('utf-8')
    except OSError as e:
        raise SerializationError(f'Unable to read {path.as_posix()}: {e}') from e
    if path.suffix.lower() == '.csv':
        try:
            return interpolate_samples(*parse_samples_csv(text))
        except InvalidParameters as e:
            raise SerializationError(f'Invalid samples in {path.as_posix()}: {e}') from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f'Invalid JSON in {path.as_posix()}: {e}') from e
    return _function_from_json(data)


def _function_from_json(data: Any) -> PiecewisePolynomial:
    if not isinstance(data, dict):
        raise SerializationError(f'Expected a JSON object, found {type(data).__name__}')
    if (schema := data.get('schema', SCHEMA_VERSION)) != SCHEMA_VERSION:
        raise SerializationError(f'Unsupported {schema=}')
    if 'function' in data:
        return _function_from_json(data['function'])
    elif 'series' in data:
        return series_to_polynomial(TranslateSeries.from_json(data['series']))
    elif 'terms' in data:
        return series_to_polynomial(TranslateSeries.from_json(data))
    return PiecewisePolynomial.from_json(data)


def parse_samples_csv(text: str) -> tuple[list[float], list[float]]:
    reader = csv.reader(StringIO(text))
    xs, values = [], []
    for i, row in enumerate(reader):
        if not row or (i == 0 and row[0].strip().lower() == 'x'):
            continue
        try:
            x, value = map(float, row)
        except ValueError as e:
            raise SerializationError(f'Invalid sample on line {i + 1}: {row}') from e
        xs.append(x)
        values.append(value)
    return xs, values


# endregion
