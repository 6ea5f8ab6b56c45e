#!/usr/bin/env python

import json
import os
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import main
from unittest.mock import patch

from testtools import TestCase

from bl_wavelets.config import WaveletConfig, DEFAULT_NAME


class ConfigTest(TestCase):
    def setUp(self):
        super().setUp()
        tmp_dir = TemporaryDirectory()
        self.addCleanup(tmp_dir.cleanup)
        self.tmp_dir = Path(tmp_dir.name)
        self.path = self.tmp_dir.joinpath('config.json')

    def _write(self, **data) -> WaveletConfig:
        self.path.write_text(json.dumps(data), encoding='utf-8')
        return WaveletConfig(self.path)

    def test_defaults(self):
        config = WaveletConfig(self.path)
        self.assertEqual(1e-12, config.epsilon)
        self.assertEqual(4, config.max_psi_order)
        self.assertEqual({}, config.file_data)

    def test_file_values_are_converted(self):
        config = self._write(epsilon=1e-8, max_level='5')
        self.assertEqual(1e-8, config.epsilon)
        self.assertEqual(5, config.max_level)
        self.assertEqual(5, config['max_level'])
        self.assertRaises(KeyError, config.__getitem__, 'nope')

    def test_overrides(self):
        config = self._write(epsilon=1e-8)
        clone = config.overridden(epsilon=1e-6)
        self.assertEqual(1e-6, clone.epsilon)
        self.assertEqual(1e-8, config.epsilon)
        self.assertRaises(KeyError, config.overridden, nope=1)

    def test_set_and_delete(self):
        config = WaveletConfig(self.path)
        config.epsilon = 1e-12
        self.assertEqual({}, config.overrides)
        config.epsilon = 1e-9
        self.assertEqual(1e-9, config.epsilon)
        del config.epsilon
        self.assertEqual(1e-12, config.epsilon)

    def test_env_var(self):
        config = self._write(max_psi_order=2)
        with patch.dict(os.environ, {'BLW_MAX_N': '6'}):
            self.assertEqual(6, config.max_psi_order)
            self.assertEqual(3, config.overridden(max_psi_order=3).max_psi_order)
        with patch.dict(os.environ, {'BLW_MAX_N': 'six'}):
            self.assertEqual(2, config.max_psi_order)
        self.assertEqual(2, config.max_psi_order)

    def test_tolerances(self):
        tolerances = WaveletConfig(self.path).tolerances()
        self.assertIn('gram_tolerance', tolerances)
        self.assertNotIn('epsilon', tolerances)
        self.assertIn('epsilon', WaveletConfig(self.path).as_dict())

    def test_save(self):
        config = self._write(max_level=5)
        config.epsilon = 1e-9
        out_path = self.tmp_dir.joinpath('nested', 'saved.json')
        config.save(out_path)
        self.assertEqual({'epsilon': 1e-9, 'max_level': 5}, json.loads(out_path.read_text('utf-8')))

    def test_directory_path(self):
        self.assertEqual(self.tmp_dir.joinpath(DEFAULT_NAME), WaveletConfig(self.tmp_dir).path)


if __name__ == '__main__':
    try:
        main(verbosity=2, exit=False)
    except KeyboardInterrupt:
        print()
