#!/usr/bin/env python

import json
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import main

from testtools import TestCase

from bl_wavelets.bspline import bspline
from bl_wavelets.euler_frobenius import euler_frobenius_data
from bl_wavelets.exceptions import InvalidParameters, SerializationError
from bl_wavelets.figures import FIGURES, mass_window, sample_series, plot_data
from bl_wavelets.output import dumps_json, format_csv, format_table, mono_width, write_atomic, emit
from bl_wavelets.output import load_function, parse_samples_csv
from bl_wavelets.poly_core import sup_distance
from bl_wavelets.wavelets import TranslateSeries, WaveletSpec, psi_series, series_to_polynomial


class FigureTest(TestCase):
    def test_figure_ids(self):
        self.assertEqual(9, len(FIGURES))
        self.assertIn('r1psi_1/r1-', FIGURES)
        self.assertRaises(InvalidParameters, plot_data, 'nope')

    def test_scaled_figure(self):
        r1 = euler_frobenius_data(1).rs[0]
        expected = psi_series(WaveletSpec.all_inv_r(1, '+'), 1e-10).scaled(r1)
        self.assertLess(FIGURES['r1psi_1/r1+'].series(1e-10).closeness(expected), 1e-15)

    def test_plot_data(self):
        sampled = plot_data('phi1+', 1e-10)
        self.assertEqual('phi_1^+', sampled.label)
        step = 1 / 64
        lo, hi = sampled.window
        self.assertEqual(1, (lo.fraction * 64).denominator)
        self.assertEqual(float(lo), sampled.xs[0])
        self.assertAlmostEqual(float(hi), sampled.xs[-1])
        self.assertAlmostEqual(step, sampled.xs[1] - sampled.xs[0])
        self.assertGreater(max(sampled.values), 1)
        data = sampled.to_json()
        self.assertEqual(len(sampled.xs), len(data['samples']))

    def test_mass_window(self):
        series = TranslateSeries(1, 0, {0: 1.0}, 1e-12)
        self.assertEqual((0, 2), mass_window(series, 1, 0.25))
        series = TranslateSeries(1, 1, {-3: 1.0, 0: 1e6, 5: 1.0}, 1e-12)
        self.assertEqual((0, 1), mass_window(series, 0.99, 0.5))
        empty = TranslateSeries(1, 0, {}, 1e-12)
        self.assertEqual((0, 0), mass_window(empty, 0.5, 0.5))
        self.assertRaises(InvalidParameters, mass_window, series, 0, 0.5)

    def test_sample_series(self):
        series = TranslateSeries(1, 0, {0: 1.0}, 1e-12)
        sampled = sample_series(series, (0, 2), 0.5, 'hat')
        self.assertEqual([0.0, 0.5, 1.0, 1.5, 2.0], sampled.xs.tolist())
        self.assertEqual([0.0, 0.5, 1.0, 0.5, 0.0], sampled.values.tolist())
        self.assertEqual([(0.0, 0.0), (0.5, 0.5)], list(sampled.rows())[:2])
        self.assertRaises(InvalidParameters, sample_series, series, (0, 2), 0)
        self.assertRaises(InvalidParameters, sample_series, series, (2, 0), 0.5)


class FormattingTest(TestCase):
    def test_json(self):
        self.assertEqual('{\n    "a": 2,\n    "b": 1,\n    "schema": 1\n}\n', dumps_json({'b': 1, 'a': 2}))
        self.assertRaises(ValueError, dumps_json, {'a': float('nan')})

    def test_csv(self):
        self.assertEqual('x,value\n0.0,1.5\n0.5,-2.0\n', format_csv([(0, 1.5), (0.5, -2)]))
        self.assertEqual('x,value\n', format_csv([]))

    def test_table(self):
        expected = 'a    bb\n---  --\n1    -\n2.5  x\n'
        self.assertEqual(expected, format_table(['a', 'bb'], [[1, None], [2.5, 'x']]))
        self.assertEqual(4, mono_width('日本'))


class WritingTest(TestCase):
    def setUp(self):
        super().setUp()
        tmp_dir = TemporaryDirectory()
        self.addCleanup(tmp_dir.cleanup)
        self.tmp_dir = Path(tmp_dir.name)

    def test_write_atomic(self):
        path = self.tmp_dir.joinpath('a', 'b.json')
        write_atomic(path, 'first\n')
        write_atomic(path, 'second\n')
        self.assertEqual('second\n', path.read_text('utf-8'))
        self.assertEqual([path], list(path.parent.iterdir()))

    def test_emit(self):
        stream = StringIO()
        emit('text\n', stream=stream)
        self.assertEqual('text\n', stream.getvalue())
        path = self.tmp_dir.joinpath('out.csv')
        emit('x,value\n', path)
        self.assertEqual('x,value\n', path.read_text('utf-8'))


class LoadFunctionTest(TestCase):
    def setUp(self):
        super().setUp()
        tmp_dir = TemporaryDirectory()
        self.addCleanup(tmp_dir.cleanup)
        self.tmp_dir = Path(tmp_dir.name)

    def _write(self, name: str, text: str) -> Path:
        path = self.tmp_dir.joinpath(name)
        path.write_text(text, encoding='utf-8')
        return path

    def test_piecewise_json(self):
        f = bspline(3)
        loaded = load_function(self._write('f.json', json.dumps(f.to_json())))
        self.assertEqual(0.0, sup_distance(f, loaded, 6))

    def test_series_json(self):
        series = psi_series(WaveletSpec(1), 1e-8)
        expected = series_to_polynomial(series)
        for name, payload in (('s.json', series.to_json()), ('build.json', {'series': series.to_json(), 'schema': 1})):
            loaded = load_function(self._write(name, dumps_json(payload)))
            self.assertLess(sup_distance(expected, loaded, 6), 1e-15)

    def test_samples_csv(self):
        f = load_function(self._write('f.csv', 'x,value\n0,0\n0.5,1\n1,0\n'))
        self.assertAlmostEqual(0.5, f(0.25))
        self.assertEqual(([0.0, 1.0], [2.0, 3.0]), parse_samples_csv('0,2\n\n1,3\n'))

    def test_invalid_input(self):
        cases = {
            'bad_row.csv': 'x,value\n0,abc\n',
            'unordered.csv': 'x,value\n1,0\n0,1\n',
            'bad.json': '{"terms": ',
            'schema.json': '{"schema": 99, "terms": []}',
            'list.json': '[1, 2]',
            'series.json': '{"terms": [[1]], "n": 1}',
        }
        for name, text in cases.items():
            self.assertRaises(SerializationError, load_function, self._write(name, text))
        self.assertRaises(SerializationError, load_function, self.tmp_dir.joinpath('missing.json'))


if __name__ == '__main__':
    try:
        main(verbosity=2, exit=False)
    except KeyboardInterrupt:
        print()
