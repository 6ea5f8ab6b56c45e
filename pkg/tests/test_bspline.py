#!/usr/bin/env python

from unittest import main

import numpy as np
from testtools import TestCase

from bl_wavelets.bspline import bspline, verify_bspline_properties, two_scale_combination, two_scale_expand
from bl_wavelets.bspline import derivative_identity_check, high_order_derivative, ddiff_sides
from bl_wavelets.config import config
from bl_wavelets.exceptions import InvalidParameters
from bl_wavelets.poly_core import moment, sup_distance


class BSplineTest(TestCase):
    def test_known_values(self):
        self.assertEqual(1.0, bspline(0)(0.5))
        self.assertAlmostEqual(0.75, bspline(2)(1.5), places=15)
        self.assertAlmostEqual(2 / 3, bspline(3)(2), places=15)
        self.assertAlmostEqual(1 / 6, bspline(3)(1), places=15)

    def test_support(self):
        for n in range(8):
            b = bspline(n)
            self.assertEqual(0, b.knots[0])
            self.assertEqual(n + 1, b.knots[-1])
            self.assertEqual(n + 1, b.n_pieces)

    def test_unit_mass(self):
        for n in range(10):
            self.assertAlmostEqual(1.0, moment(bspline(n), 0), delta=1e-12)

    def test_positive_inside_support(self):
        rng = np.random.default_rng(7)
        for n in range(8):
            xs = rng.uniform(0, n + 1, 500)
            xs = xs[(xs > 0) & (xs < n + 1)]
            self.assertGreater(float(np.min(bspline(n)(xs))), 0.0)

    def test_matches_convolution_with_box(self):
        # B_5(x) = integral over [0, 1] of B_4(x - t) dt, split where x - t crosses an integer
        quartic, quintic = bspline(4), bspline(5)
        nodes, weights = np.polynomial.legendre.leggauss(4)
        rng = np.random.default_rng(11)
        for x in rng.uniform(0, 6, 200):
            split = x - np.floor(x)
            total = 0.0
            for lo, hi in ((0.0, split), (split, 1.0)):
                t = lo + (hi - lo) * (nodes + 1) / 2
                total += (hi - lo) / 2 * float(np.dot(weights, quartic(x - t)))
            self.assertAlmostEqual(total, quintic(x), delta=1e-13)

    def test_cached_instances(self):
        self.assertIs(bspline(3), bspline(3))

    def test_property_reports(self):
        for n in range(1, 7):
            report = verify_bspline_properties(n)
            self.assertTrue(report.passed, [str(c) for c in report.failures])

    def test_property_report_requires_positive_order(self):
        self.assertRaises(InvalidParameters, verify_bspline_properties, 0)

    def test_order_limits(self):
        self.assertRaises(InvalidParameters, bspline, -1)
        self.assertRaises(InvalidParameters, bspline, config.max_bspline_order + 1)

    def test_two_scale_relation(self):
        self.assertEqual([(0, 0.25), (1, 0.75), (2, 0.75), (3, 0.25)], two_scale_expand(2))
        for n in range(6):
            self.assertLess(sup_distance(bspline(n), two_scale_combination(n), n + 2), 1e-13)

    def test_derivative_identity(self):
        for n in range(1, 7):
            self.assertTrue(derivative_identity_check(n))
        self.assertRaises(InvalidParameters, derivative_identity_check, 0)

    def test_high_order_derivative(self):
        derivative = high_order_derivative(1)
        self.assertAlmostEqual(0.5, derivative.derivative(0.5), places=14)  # B_3'' = x on [0, 1)
        self.assertAlmostEqual(4.0, derivative.dilated(0.0), places=13)  # 4 * B_3''(1)
        self.assertEqual((-0.5, 1.5), (derivative.dilated.knots[0], derivative.dilated.knots[-1]))

    def test_derivative_difference_identity(self):
        for n in range(1, 5):
            lhs, rhs = ddiff_sides(n)
            self.assertLess(sup_distance(lhs, rhs, 2 * n + 4), 1e-12)


if __name__ == '__main__':
    try:
        main(verbosity=2, exit=False)
    except KeyboardInterrupt:
        print()
