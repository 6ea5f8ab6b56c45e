"""
Command line interface for root tables, function construction, verification suites, norms, and figure data.

:author: Doug Skrypa
"""

from __future__ import annotations

import logging
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from cli_command_parser import Command, Action, Counter, Option, Flag, inputs

from .__version__ import __author_email__, __version__, __author__, __url__  # noqa
from .besov import BesovParams, DyadicGrid, equivalence_report, modulus_norm, circ_blocks, star_blocks
from .besov import parse_exponent
from .bspline import verify_bspline_properties
from .config import config as default_config
from .enums import NormKind, OutputFormat, SeriesKind, SystemKind
from .euler_frobenius import euler_frobenius_data
from .exceptions import BLWaveletError, InvalidParameters, SerializationError, VerificationFailed
from .figures import FIGURES, mass_window, plot_data, sample_series
from .localisation import verify_dym_identities, verify_localisation
from .output import dumps_json, emit, format_csv, format_table, load_function
from .poly_core import dyadic
from .reports import VerificationReport, json_number
from .wavelets import WaveletSpec, gram_matrix, gram_report, moments_report, phi_series, psi_series
from .wavelets import window_tail_mass

__all__ = ['BLWavelets', 'main']
log = logging.getLogger(__name__)


class BLWavelets(Command, description='Battle-Lemarie spline wavelets', prog='bl-wavelets'):
    action = Action(help='The operation to perform')
    verbose = Counter('-v', help='Increase logging verbosity (can specify multiple times)')
    n: int = Option('--n', type=int, default=1, help='The B-spline order')
    epsilon: float = Option('--epsilon', type=float, help='The truncation threshold (default: from config)')
    sign = Option('--sign', default='+', help='The +/- convention (+, -, plus, minus)')
    tchoice = Option('--t', help='Comma-separated r/invr choice per root index (a single value applies to all)')
    kind = Option('--kind', choices=('phi', 'psi'), default='phi', help='The function to build')
    centred = Flag('--centred', help='Build the centred function instead of the orthonormal pair member')
    window = Option('--window', help='The sampling window as LO,HI (use --window=LO,HI for a negative LO)')
    system = Option('--system', choices=('phi', 'psi', 'cross'), default='phi', help='The gram matrix system')
    shifts: int = Option('--shifts', type=int, default=8, help='The shift range K for gram matrices')
    half_shift = Flag('--half-shift', help='Use the system generated by the half-integer translates of B_n')
    input: Path = Option('--input', type=inputs.Path(type='file', exists=True), help='A JSON function or CSV samples')
    s: float = Option('--s', type=float, help='The smoothness (default: middle of the admissible range)')
    p = Option('--p', default='2', help='The integrability exponent (a number or inf)')
    q = Option('--q', default='2', help='The summability exponent (a number or inf)')
    max_level: int = Option('--D', type=int, help='The finest wavelet level (default: from config)')
    which = Option('--which', choices=('star', 'circ', 'both', 'modulus'), default='both', help='The norm to compute')
    order: int = Option('--M', type=int, help='The difference order for the modulus norm (default: floor(s) + 1)')
    t_levels: int = Option('--t-levels', type=int, default=12, help='The finest t = 2^-j for the modulus norm')
    figure = Option('--figure', choices=tuple(FIGURES), help='The figure to export samples for')
    format = Option('--format', choices=('json', 'csv', 'table'), default='json', help='The output format')
    out: Optional[Path] = Option('--out', type=inputs.Path(type='file'), help='Write output here instead of stdout')

    def _init_command_(self):
        log_fmt = '%(asctime)s %(levelname)s %(name)s %(lineno)d %(message)s' if self.verbose > 1 else '%(message)s'
        logging.basicConfig(level=logging.DEBUG if self.verbose else logging.INFO, format=log_fmt, stream=sys.stderr)

    # region Shared Helpers

    @property
    def config(self):
        if self.epsilon is None:
            return default_config
        return default_config.overridden(epsilon=self.epsilon)

    @property
    def output_format(self) -> OutputFormat:
        return OutputFormat(self.format)

    @property
    def spec(self) -> WaveletSpec:
        return WaveletSpec.parse(self.n, self.sign, self.tchoice)

    def _emit(self, payload: dict[str, Any], rows: Iterable = None, table: tuple[Sequence[str], Iterable] = None):
        fmt = self.output_format
        if fmt is OutputFormat.JSON:
            text = dumps_json(payload)
        elif fmt is OutputFormat.CSV:
            if rows is None:
                raise InvalidParameters('format', fmt.value, 'CSV output is only available for sampled functions')
            text = format_csv(rows)
        else:
            if table is None:
                raise InvalidParameters('format', fmt.value, 'table output is not available for this operation')
            text = format_table(*table)
        emit(text, self.out)

    def _emit_report(self, report: VerificationReport):
        rows = [(c.name, 'PASS' if c.passed else 'FAIL', c.value, c.tolerance, c.detail) for c in report]
        self._emit(report.to_json(), table=(('check', 'status', 'value', 'tolerance', 'detail'), rows))
        if report.passed:
            log.info(f'Verification {report.name!r}: all {len(report.checks)} checks passed')
        else:
            raise VerificationFailed(report)

    # endregion

    @action(help='Show the Euler-Frobenius roots and derived constants')
    def roots(self):
        data = euler_frobenius_data(self.n, self.config)
        rows = [(j + 1, a, r, 1 / r) for j, (a, r) in enumerate(zip(data.alphas, data.rs))]
        rows += [('beta', data.beta, None, None), ('delta', data.delta, None, None)]
        self._emit({'roots': data.to_json()}, table=(('j', 'alpha', 'r', '1/r'), rows))

    @action(help='Build a scaling function or wavelet, as JSON series data or CSV samples')
    def build(self):
        spec, config = self.spec, self.config
        kind = SeriesKind(self.kind)
        builder = phi_series if kind is SeriesKind.PHI else psi_series
        series = builder(spec, self.epsilon, centred=self.centred, config=config)
        window = self._window() or mass_window(series, config.figure_mass, config.sample_step)
        label = f'{kind.value}[{spec}]'
        payload = {
            'kind': kind.value,
            'spec': spec.to_json(),
            'centred': self.centred,
            'series': series.to_json(),
            'window': [float(v) for v in window],
            'window_tail_mass': json_number(window_tail_mass(series, window)),
        }
        rows = table = None
        if self.output_format is OutputFormat.CSV:
            rows = sample_series(series, window, config.sample_step, label, config).rows()
        elif self.output_format is OutputFormat.TABLE:
            table = (('shift', 'weight'), [(str(shift), weight) for shift, weight in series.items()])
        self._emit(payload, rows, table)

    def _window(self):
        if not self.window:
            return None
        try:
            lo, hi = (dyadic(v.strip()) for v in self.window.split(','))
        except (ValueError, TypeError) as e:
            raise InvalidParameters('window', self.window, f'expected LO,HI with dyadic values: {e}') from None
        if hi <= lo:
            raise InvalidParameters('window', self.window, 'HI must be greater than LO')
        return lo, hi

    # region Verification Suites

    @action('verify bspline', help='Check support, positivity, smoothness, and symmetry of B_n')
    def verify_bspline(self):
        self._emit_report(verify_bspline_properties(self.n, self.config))

    @action('verify localisation', help='Check that the localised combinations match their closed forms')
    def verify_localisation(self):
        self._emit_report(verify_localisation(self.n, self.epsilon, self.sign, self.config))

    @action('verify gram', help='Check orthonormality of the wavelet system')
    def verify_gram(self):
        self._emit_report(gram_report(self.spec, self.shifts, self.epsilon, self.half_shift, self.config))

    @action('verify moments', help='Check the vanishing moments of the wavelet')
    def verify_moments(self):
        self._emit_report(moments_report(self.spec, self.epsilon, self.config))

    @action('verify dym', help='Check the B-spline identities behind the localised wavelet')
    def verify_dym(self):
        self._emit_report(verify_dym_identities(self.n, self.config))

    # endregion

    @action(help='Compute Besov norms of a function')
    def norm(self):
        if self.input is None:
            raise InvalidParameters('input', None, 'a JSON or CSV function file is required')
        f = load_function(self.input)
        config = self.config
        which = NormKind(self.which)
        max_level = config.max_level if self.max_level is None else self.max_level
        if which is NormKind.MODULUS:
            payload = self._modulus_payload(f)
        else:
            params = self._besov_params()
            payload = {'params': params.to_json(), 'D': max_level}
            if which is NormKind.BOTH:
                payload.update(equivalence_report(f, params, max_level, self.epsilon, self.spec, config).to_json())
            elif which is NormKind.STAR:
                blocks = star_blocks(f, params, max_level, self.epsilon, self.spec, config)
                payload.update(star=blocks.value, blocks=blocks.to_json())
            else:
                blocks = circ_blocks(f, params, max_level, config)
                payload.update(circ=blocks.value, blocks=blocks.to_json())

        table_rows = [(key, value) for key, value in payload.items() if isinstance(value, (int, float, str))]
        self._emit(payload, table=(('name', 'value'), table_rows))

    def _besov_params(self) -> BesovParams:
        if self.s is None:
            return BesovParams.midpoint(self.n, self.p, self.q)
        return BesovParams(self.n, self.s, self.p, self.q)

    def _modulus_payload(self, f) -> dict[str, Any]:
        p, q = parse_exponent(self.p, 'p'), parse_exponent(self.q, 'q')
        if self.s is None:
            raise InvalidParameters('s', None, 'the modulus norm requires an explicit smoothness')
        order = math.floor(self.s) + 1 if self.order is None else self.order
        grid = DyadicGrid(self.t_levels)
        value = modulus_norm(f, order, self.s, p, q, grid)
        return {
            'modulus': value,
            'M': order,
            's': self.s,
            'p': json_number(p),
            'q': json_number(q),
            't_levels': grid.max_level,
        }

    @action(help='Show the gram matrix of a wavelet system')
    def gram(self):
        gram = gram_matrix(SystemKind(self.system), self.spec, self.shifts, self.epsilon, self.half_shift, self.config)
        headers = ['row'] + [str(i) for i in range(gram.matrix.shape[1])]
        rows = [[i, *row.tolist()] for i, row in enumerate(gram.matrix)]
        self._emit(gram.to_json(), table=(headers, rows))

    @action('plot-data', help='Export samples of one of the figure functions')
    def plot_data(self):
        if self.figure is None:
            raise InvalidParameters('figure', None, f'expected one of: {", ".join(FIGURES)}')
        sampled = plot_data(self.figure, self.epsilon, self.config)
        self._emit({'figure': self.figure, **sampled.to_json()}, sampled.rows())


def main(argv: Sequence[str] = None) -> int:
    """Run the CLI; returns 0 on success, 1 when a verification suite fails, and 2 for invalid input."""
    try:
        BLWavelets.parse_and_run(argv)
    except VerificationFailed as e:
        log.error(e)
        return 1
    except (InvalidParameters, SerializationError) as e:
        log.error(f'Error: {e}')
        return 2
    except BLWaveletError as e:
        log.error(f'Error: {e}')
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 2)
    return 0


if __name__ == '__main__':
    sys.exit(main())
