#!/usr/bin/env python

import math
from fractions import Fraction
from unittest import main

import numpy as np
from testtools import TestCase

from bl_wavelets.besov import BesovParams, CoefficientGrid, lp_norm, lq_combine, sequence_norm, parse_exponent
from bl_wavelets.besov import wavelet_pairings, analyze, synthesize, star_blocks, circ_blocks, norm_star, norm_circ
from bl_wavelets.besov import level_decay_slope, equivalence_bounds, equivalence_report
from bl_wavelets.besov import DyadicGrid, modulus_norm, lp_function_norm, finite_difference, interpolate_samples
from bl_wavelets.bspline import bspline
from bl_wavelets.euler_frobenius import euler_frobenius_data
from bl_wavelets.exceptions import InvalidParameters
from bl_wavelets.poly_core import PiecewisePolynomial, linear_combine, sup_distance, translate_dilate
from bl_wavelets.wavelets import WaveletSpec, series_to_polynomial, wavelet_system

SQRT2 = math.sqrt(2)


class BesovParamsTest(TestCase):
    def test_parse_exponent(self):
        self.assertEqual(math.inf, parse_exponent('inf'))
        self.assertEqual(math.inf, parse_exponent(' Infinity '))
        self.assertEqual(0.5, parse_exponent('0.5'))
        for bad in ('0', -1, 'abc', None):
            self.assertRaises(InvalidParameters, parse_exponent, bad)

    def test_admissible_range(self):
        self.assertEqual((-1.0, 1.5), BesovParams.admissible_range(1, 2))
        self.assertEqual((0.0, 2.0), BesovParams.admissible_range(1, 0.5))
        self.assertEqual((-2.0, 2.0), BesovParams.admissible_range(2, 'inf'))
        self.assertRaises(InvalidParameters, BesovParams, 1, 1.5)
        self.assertRaises(InvalidParameters, BesovParams, 1, -1.0)
        self.assertRaises(InvalidParameters, BesovParams, -1, 0.0)
        self.assertRaises(InvalidParameters, BesovParams, 1, 0.5, 0)

    def test_midpoint(self):
        params = BesovParams.midpoint(1, 'inf', 1)
        self.assertEqual(0.0, params.s)
        self.assertEqual(math.inf, params.p)
        self.assertEqual(0.0, params.inv_p)
        self.assertEqual(0.25, BesovParams.midpoint(1).s)

    def test_level_weight(self):
        params = BesovParams(1, 0.5, 2, 2)
        self.assertEqual(1.0, params.level_exponent)
        self.assertEqual(8.0, params.level_weight(3))
        self.assertEqual(0.5, params.level_weight(-1))
        self.assertEqual(0.25, params.with_s(0.25).s)
        self.assertEqual({'n': 1, 's': 0.5, 'p': 2.0, 'q': 'inf'}, BesovParams(1, 0.5, 2, 'inf').to_json())


class SequenceNormTest(TestCase):
    def test_lp_norm(self):
        self.assertEqual(5.0, lp_norm([3, -4], 2))
        self.assertEqual(4.0, lp_norm([3, -4], math.inf))
        self.assertEqual(0.0, lp_norm([], 2))
        self.assertEqual(0.0, lp_norm([0, 0], 0.5))
        self.assertAlmostEqual(4.0, lp_norm([1, 1], 0.5))
        self.assertEqual(7.0, lq_combine([3, 4], 1))

    def test_zero_grid(self):
        self.assertEqual(0.0, sequence_norm(CoefficientGrid(), BesovParams(1, 0.5)))
        self.assertEqual(0.0, sequence_norm(CoefficientGrid.from_entries({(0, 0): 0.0}), BesovParams(1, 0.5)))

    def test_known_values(self):
        mu = CoefficientGrid.from_entries({(-1, 0): 3.0, (-1, 1): 4.0, (0, 5): 0.0})
        self.assertEqual(5.0, sequence_norm(mu, BesovParams(1, 0.5)))
        mu = CoefficientGrid.from_entries({(-1, 0): 1.0, (0, 0): 1.0})
        self.assertAlmostEqual(SQRT2, sequence_norm(mu, BesovParams(1, 0.5, 2, 2)))
        self.assertEqual(2.0, sequence_norm(mu, BesovParams(1, 0.5, 2, 1)))
        self.assertEqual(1.0, sequence_norm(mu, BesovParams(1, 0.5, 2, 'inf')))
        mu = CoefficientGrid.from_entries({(0, 0): 1.0, (0, 1): 1.0})
        self.assertAlmostEqual(4.0, sequence_norm(mu, BesovParams(1, 1.0, 0.5, 1)))

    def test_triangle_inequality_and_homogeneity(self):
        rng = np.random.default_rng(17)
        keys = [(d, tau) for d in range(-1, 3) for tau in range(-3, 4)]
        for p, q in ((1, 1), (2, 2), (1, 'inf'), ('inf', 2), ('inf', 'inf')):
            params = BesovParams(1, 0.5, p, q)
            for _ in range(5):
                a, b = rng.normal(size=(2, len(keys)))
                mu_a = CoefficientGrid.from_entries(dict(zip(keys, a)))
                mu_b = CoefficientGrid.from_entries(dict(zip(keys, b)))
                mu_sum = CoefficientGrid.from_entries(dict(zip(keys, a + b)))
                norm_a, norm_b = sequence_norm(mu_a, params), sequence_norm(mu_b, params)
                self.assertLessEqual(sequence_norm(mu_sum, params), norm_a + norm_b + 1e-12)
                factor = float(rng.uniform(-3, 3))
                scaled = sequence_norm(mu_a.scaled(factor), params)
                self.assertAlmostEqual(abs(factor) * norm_a, scaled, delta=1e-12 * norm_a)

    def test_grid_access(self):
        mu = CoefficientGrid.from_entries({(-1, 2): 1.0, (1, -3): 2.0, (1, -1): 3.0}, max_level=4)
        self.assertEqual(4, mu.max_level)
        self.assertEqual([-3, -2, -1], list(mu.levels[1].taus))
        self.assertEqual(0.0, mu[1, -2])
        self.assertEqual(3.0, mu[1, -1])
        self.assertEqual(0.0, mu[0, 0])
        self.assertEqual([(-1, 2, 1.0), (1, -3, 2.0), (1, -2, 0.0), (1, -1, 3.0)], list(mu))
        self.assertEqual(3.0, mu.max_difference(CoefficientGrid()))
        self.assertEqual(6.0, mu.scaled(2)[1, -1])
        self.assertEqual([-2, -1], list(mu.levels[1].restricted(-2, 5).taus))
        self.assertTrue(CoefficientGrid().is_empty)
        self.assertFalse(mu.is_empty)
        self.assertRaises(InvalidParameters, CoefficientGrid.from_entries, {(-2, 0): 1.0})


class AnalysisTest(TestCase):
    def test_scaling_function_pairings(self):
        phi, _ = wavelet_system(WaveletSpec(1), 1e-12)
        f = series_to_polynomial(phi.translated(5))
        pairings = wavelet_pairings(f, 1, 2, 1e-12)
        coarse = pairings.levels[-1]
        self.assertAlmostEqual(SQRT2, coarse.get(5), delta=1e-8)
        others = [abs(v) for tau, v in zip(coarse.taus, coarse.values) if tau != 5]
        self.assertLess(max(others), 1e-8)
        for d in range(3):
            self.assertLess(float(np.max(np.abs(pairings.levels[d].values))), 1e-8)

    def test_wavelet_pairings(self):
        _, psi = wavelet_system(WaveletSpec(1), 1e-12)
        pairings = wavelet_pairings(series_to_polynomial(psi), 1, 2, 1e-12)
        self.assertAlmostEqual(1.0, pairings.levels[0].get(0), delta=1e-8)
        self.assertLess(float(np.max(np.abs(pairings.levels[-1].values))), 1e-8)
        self.assertLess(float(np.max(np.abs(pairings.levels[1].values))), 1e-8)

    def test_level_weights(self):
        f = bspline(2)
        params = BesovParams(2, 0.75, 2, 2)
        raw = wavelet_pairings(f, 2, 3, 1e-10)
        mu = analyze(f, params, 3, epsilon=1e-10)
        self.assertEqual('analysis', mu.provenance)
        for d in range(-1, 4):
            expected = raw.levels[d].values * 2.0 ** (d * 1.25)
            self.assertTrue(np.allclose(expected, mu.levels[d].values, rtol=1e-14, atol=0))

    def test_tau_window(self):
        mu = analyze(bspline(1), BesovParams(1, 0.5), 2, tau_window=(0, 1), epsilon=1e-10)
        for level in mu.levels.values():
            self.assertTrue(set(level.taus) <= {0, 1})

    def test_zero_function(self):
        self.assertTrue(analyze(PiecewisePolynomial.zero(), BesovParams(1, 0.5)).is_empty)
        self.assertTrue(synthesize(CoefficientGrid(), BesovParams(1, 0.5)).is_zero)

    def test_spec_mismatch(self):
        self.assertRaises(InvalidParameters, analyze, bspline(1), BesovParams(1, 0.5), 2, None, 1e-8, WaveletSpec(2))
        self.assertRaises(InvalidParameters, wavelet_pairings, bspline(1), 1, -1)

    def test_round_trip(self):
        params = BesovParams(1, 0.5)
        for f in (bspline(1), translate_dilate(bspline(1), 1, 1)):
            restored = synthesize(analyze(f, params, 2, epsilon=1e-10), params, 1e-10)
            self.assertLess(sup_distance(f, restored, 8), 1e-6)

    def test_coefficient_round_trip(self):
        rng = np.random.default_rng(29)
        for n in (1, 2):
            params = BesovParams.midpoint(n)
            entries = {(d, tau): float(rng.normal()) for d in range(-1, 2) for tau in range(-2, 3)}
            mu = CoefficientGrid.from_entries(entries, max_level=1)
            restored = analyze(synthesize(mu, params, 1e-10), params, 1, epsilon=1e-10)
            self.assertLess(restored.max_difference(mu), 1e-6)

    def test_round_trip_other_system(self):
        params = BesovParams(2, 1.0, 2, 1)
        spec = WaveletSpec.parse(2, '-', 'r,invr')
        f = translate_dilate(bspline(2), 3, 1)
        mu = analyze(f, params, 1, epsilon=1e-10, spec=spec)
        self.assertLess(sup_distance(f, synthesize(mu, params, 1e-10, spec), 8), 1e-6)


class NormTest(TestCase):
    def test_norm_star_of_wavelet(self):
        _, psi = wavelet_system(WaveletSpec(1), 1e-12)
        params = BesovParams(1, 0.5)
        self.assertAlmostEqual(1.0, norm_star(series_to_polynomial(psi), params, 3, 1e-12), delta=1e-6)

    def test_star_blocks(self):
        _, psi = wavelet_system(WaveletSpec(1), 1e-12)
        blocks = star_blocks(series_to_polynomial(psi).shifted(4), BesovParams(1, 0.5), 3, 1e-12)
        self.assertEqual([0, 1, 2, 3], [t.level for t in blocks.levels])
        self.assertAlmostEqual(1.0, blocks.levels[0].weighted, delta=1e-6)
        self.assertLess(blocks.first, 1e-8)
        self.assertEqual('star', blocks.to_json()['kind'])

    def test_circ_first_term(self):
        f = bspline(1)
        blocks = circ_blocks(f, BesovParams(1, 0.5), 2)
        self.assertAlmostEqual(math.sqrt(2 * (1 / 6) ** 2 + (2 / 3) ** 2), blocks.first, delta=1e-12)
        self.assertGreater(blocks.second, 0)
        self.assertEqual(blocks.value, norm_circ(f, BesovParams(1, 0.5), 2))
        self.assertEqual(0.0, norm_circ(PiecewisePolynomial.zero(), BesovParams(1, 0.5)))
        self.assertRaises(InvalidParameters, circ_blocks, f, BesovParams(1, 0.5), -1)

    def test_level_decay_slope(self):
        params = BesovParams.midpoint(1)
        blocks = circ_blocks(bspline(1), params, 8)
        self.assertAlmostEqual(params.level_exponent - 2, level_decay_slope(blocks, 2), delta=1e-6)
        self.assertRaises(InvalidParameters, level_decay_slope, blocks, 8)

    def test_star_slope_separates_smoothness(self):
        hat = bspline(1)
        below = level_decay_slope(star_blocks(hat, BesovParams(2, 1.4), 8, 1e-12))
        above = level_decay_slope(star_blocks(hat, BesovParams(2, 1.6), 8, 1e-12))
        self.assertLess(below, 0)
        self.assertGreater(above, 0)
        self.assertAlmostEqual(0.2, above - below, delta=1e-6)


class EquivalenceTest(TestCase):
    def test_linear_bounds(self):
        lower, upper = equivalence_bounds(1, 2)
        self.assertAlmostEqual(1.0, lower, delta=1e-12)
        self.assertAlmostEqual((3 - math.sqrt(3)) / (math.sqrt(3) - 1), upper, delta=1e-12)
        lower, upper = equivalence_bounds(1, 1)
        self.assertAlmostEqual(1.0, lower, delta=1e-12)

    def test_bounds_order(self):
        for n in (1, 2, 3):
            for p in (0.5, 1, 2, math.inf):
                bounds = equivalence_bounds(n, p)
                self.assertLess(bounds.lower, bounds.upper)
                self.assertTrue(bounds.contains(euler_frobenius_data(n).beta))

    def test_report(self):
        params = BesovParams.midpoint(2)
        report = equivalence_report(bspline(2).shifted(1), params, 4, 1e-12)
        self.assertFalse(report.violation)
        self.assertTrue(report.bounds.contains(report.block_ratio))
        self.assertGreater(report.ratio, 0)
        data = report.to_json()
        self.assertEqual({'truncation_mass'}, set(data['tail_bounds']))
        self.assertFalse(data['violation'])

    def test_zero_function(self):
        report = equivalence_report(PiecewisePolynomial.zero(), BesovParams(1, 0.5), 2, 1e-10)
        self.assertIsNone(report.ratio)
        self.assertIsNone(report.block_ratio)
        self.assertFalse(report.violation)
        self.assertIsNone(report.to_json()['ratio'])

    def test_ratio_is_stable_in_max_level(self):
        functions = [
            bspline(1),
            bspline(2).shifted(1),
            translate_dilate(bspline(1), 1, 1),
            bspline(3).shifted(-2),
            linear_combine([(1.0, bspline(2)), (-0.5, translate_dilate(bspline(3), 1, 1))]),
        ]
        for n in (1, 2):
            for p, q in ((1, 1), (2, 2), ('inf', 'inf')):
                params = BesovParams.midpoint(n, p, q)
                for f in functions:
                    coarse = norm_star(f, params, 6, 1e-12) / norm_circ(f, params, 6)
                    fine = norm_star(f, params, 8, 1e-12) / norm_circ(f, params, 8)
                    self.assertLess(abs(coarse - fine) / fine, 1e-2, f'{n=}, {params}, {f}')


class ModulusTest(TestCase):
    def test_lp_function_norm(self):
        hat = bspline(1)
        self.assertAlmostEqual(math.sqrt(2 / 3), lp_function_norm(hat, 2), delta=1e-14)
        self.assertAlmostEqual(1.0, lp_function_norm(hat, 1), delta=1e-14)
        self.assertAlmostEqual(1.0, lp_function_norm(hat, 'inf'), delta=1e-14)
        self.assertEqual(0.0, lp_function_norm(PiecewisePolynomial.zero(), 2))

    def test_finite_difference(self):
        widths, pieces = finite_difference(bspline(0), Fraction(1, 2), 1)
        # B_0(x + 1/2) - B_0(x) on [-1/2, 1)
        self.assertEqual([0.5, 0.5, 0.5], widths.tolist())
        self.assertEqual([1.0, 0.0, -1.0], pieces[:, 0].tolist())

    def test_finite_difference_annihilates_polynomials(self):
        _, pieces = finite_difference(bspline(1), Fraction(1, 4), 2)
        interior = [abs(row[0]) for row in pieces]
        self.assertEqual(0.0, min(interior))

    def test_bounded_below_critical_smoothness(self):
        hat = bspline(1)
        short = modulus_norm(hat, 2, 1.4, 2, 2, DyadicGrid(40))
        long = modulus_norm(hat, 2, 1.4, 2, 2, DyadicGrid(60))
        self.assertLess(abs(long - short) / short, 1e-2)

    def test_unbounded_above_critical_smoothness(self):
        hat = bspline(1)
        short = modulus_norm(hat, 2, 1.6, 2, 2, DyadicGrid(20))
        long = modulus_norm(hat, 2, 1.6, 2, 2, DyadicGrid(60))
        self.assertGreater(long, 10 * short)

    def test_homogeneous(self):
        f = bspline(2)
        value = modulus_norm(f, 3, 1.5, 2, 2, DyadicGrid(8))
        self.assertAlmostEqual(2 * value, modulus_norm(f * 2.0, 3, 1.5, 2, 2, DyadicGrid(8)), delta=1e-12 * value)
        self.assertEqual(0.0, modulus_norm(PiecewisePolynomial.zero(), 1, 0.5, 2, 2))

    def test_invalid(self):
        f = bspline(1)
        self.assertRaises(InvalidParameters, modulus_norm, f, 2, 0.5, 0.5, 2)
        self.assertRaises(InvalidParameters, modulus_norm, f, 0, 0.5, 2, 2)
        self.assertRaises(InvalidParameters, modulus_norm, f, 2, 2.0, 2, 2)
        self.assertRaises(InvalidParameters, modulus_norm, f, 2, 0.0, 2, 2)
        self.assertRaises(InvalidParameters, DyadicGrid, 2, 3)
        self.assertRaises(InvalidParameters, DyadicGrid, 2, 0, -1)

    def test_grid(self):
        grid = DyadicGrid(2, -1, 1)
        self.assertEqual([Fraction(2), Fraction(1), Fraction(1, 2), Fraction(1, 4)], list(grid.ts()))
        self.assertEqual([Fraction(1, 2), Fraction(1, 4)], list(grid.steps(Fraction(1, 2))))


class SamplesTest(TestCase):
    def test_interpolation(self):
        f = interpolate_samples([0, 0.5, 1], [0.0, 1.0, 0.0])
        self.assertAlmostEqual(0.5, f(0.25))
        self.assertAlmostEqual(0.5, f(0.75))
        self.assertEqual(0.0, f(1.5))
        self.assertEqual(0.0, f(-0.25))

    def test_invalid(self):
        self.assertRaises(InvalidParameters, interpolate_samples, [0, 1], [0.0])
        self.assertRaises(InvalidParameters, interpolate_samples, [0], [0.0])
        self.assertRaises(InvalidParameters, interpolate_samples, [0, 1, 1], [0.0, 1.0, 2.0])
        self.assertRaises(InvalidParameters, interpolate_samples, [0, Fraction(1, 3)], [0.0, 1.0])


if __name__ == '__main__':
    try:
        main(verbosity=2, exit=False)
    except KeyboardInterrupt:
        print()
