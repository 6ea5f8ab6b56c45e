#!/usr/bin/env python

import math
from fractions import Fraction
from unittest import main

import numpy as np
from testtools import TestCase

from bl_wavelets.enums import TChoice
from bl_wavelets.euler_frobenius import u_polynomial, u_star, find_alphas, rs_from_alphas, inv_rs_from_alphas
from bl_wavelets.euler_frobenius import euler_frobenius_data, constants, pn_product, pn_direct
from bl_wavelets.exceptions import DomainError, InvalidParameters

SQRT105 = math.sqrt(105)


class PolynomialTest(TestCase):
    def test_u_polynomials(self):
        self.assertEqual((Fraction(1),), u_polynomial(0).coefficients)
        self.assertEqual((0, 1), u_polynomial(1).coefficients)
        self.assertEqual((Fraction(1, 3), 0, Fraction(2, 3)), u_polynomial(2).coefficients)
        expected = (Fraction(2, 15), 0, Fraction(11, 15), 0, Fraction(2, 15))
        self.assertEqual(expected, u_polynomial(4).coefficients)

    def test_u_star(self):
        self.assertEqual((1, Fraction(-2, 3)), u_star(1).coefficients)
        for n in range(6):
            poly = u_star(n)
            self.assertEqual(n, poly.degree)
            self.assertEqual(1, poly.exact(0))

    def test_u_values_sum_to_one_at_zero_frequency(self):
        for m in range(9):
            self.assertEqual(1, u_polynomial(m).exact(1))

    def test_invalid_orders(self):
        self.assertRaises(InvalidParameters, u_polynomial, -1)
        self.assertRaises(InvalidParameters, u_star, -1)
        self.assertRaises(InvalidParameters, find_alphas, 0)


class RootsTest(TestCase):
    def test_linear_roots(self):
        data = euler_frobenius_data(1)
        self.assertAlmostEqual(1.5, data.alphas[0], delta=1e-14)
        self.assertAlmostEqual(2 - math.sqrt(3), data.rs[0], delta=1e-12)
        self.assertAlmostEqual(2 + math.sqrt(3), data.inv_rs[0], delta=1e-11)
        self.assertAlmostEqual(1 + data.rs[0], data.beta, delta=1e-12)

    def test_quadratic_roots(self):
        data = euler_frobenius_data(2)
        self.assertAlmostEqual((15 - SQRT105) / 4, data.alphas[0], delta=1e-12)
        self.assertAlmostEqual((15 + SQRT105) / 4, data.alphas[1], delta=1e-12)
        r1 = ((13 - SQRT105) - math.sqrt(270 - 26 * SQRT105)) / 2
        r2 = ((13 + SQRT105) - math.sqrt(270 + 26 * SQRT105)) / 2
        self.assertAlmostEqual(r1, data.rs[0], delta=1e-10)
        self.assertAlmostEqual(r2, data.rs[1], delta=1e-10)
        beta = 4 * math.sqrt(data.alphas[0] * data.alphas[1] * data.rs[0] * data.rs[1])
        self.assertAlmostEqual(beta, data.beta, delta=1e-12)

    def test_roots_are_simple_and_ordered(self):
        for n in range(1, 8):
            data = euler_frobenius_data(n)
            self.assertEqual(n, len(data.alphas))
            self.assertTrue(all(a > 1 for a in data.alphas))
            self.assertEqual(sorted(data.alphas), list(data.alphas))
            self.assertTrue(all(0 < r < 1 for r in data.rs))
            self.assertTrue(all(res <= 1e-11 for res in data.residuals))
            self.assertTrue(all(d > 1e-9 for d in data.derivatives))

    def test_r_is_a_root_of_the_quadratic(self):
        for alpha in (1.5, 2.0, 40.0):
            r, inv_r = rs_from_alphas([alpha])[0], inv_rs_from_alphas([alpha])[0]
            self.assertAlmostEqual(0.0, r * r - 2 * (2 * alpha - 1) * r + 1, delta=1e-14)
            self.assertAlmostEqual(1.0, r * inv_r, delta=1e-15)

    def test_r_decreases_with_alpha(self):
        rng = np.random.default_rng(3)
        for lo, hi in np.sort(1 + rng.exponential(5.0, size=(100, 2)), axis=1):
            if hi > lo:
                r_lo, r_hi = rs_from_alphas([lo, hi])
                self.assertGreater(r_lo, r_hi)

    def test_domain_error(self):
        self.assertRaises(DomainError, rs_from_alphas, [1.0])
        self.assertRaises(DomainError, rs_from_alphas, [0.5])

    def test_haar_data(self):
        data = euler_frobenius_data(0)
        self.assertEqual((), data.rs)
        self.assertEqual(1.0, data.beta)

    def test_json(self):
        data = euler_frobenius_data(1).to_json()
        self.assertAlmostEqual(1.5, data['alpha'][0], delta=1e-14)
        self.assertAlmostEqual(0.2679491924311227, data['r'][0], delta=1e-15)


class ConstantsTest(TestCase):
    def test_constants_depend_on_the_t_choice(self):
        data = euler_frobenius_data(1)
        with_r = constants(data, [TChoice.USE_R])
        with_inv_r = constants(data, ['invr'])
        self.assertEqual(with_r.beta, with_inv_r.beta)
        self.assertAlmostEqual(with_r.gamma / data.rs[0], with_inv_r.gamma, delta=1e-13)
        self.assertAlmostEqual(1 / data.rs[0] - data.rs[0], with_r.delta, delta=1e-12)

    def test_t_choice_length(self):
        self.assertRaises(InvalidParameters, constants, euler_frobenius_data(2), ['r'])


class AutocorrelationSymbolTest(TestCase):
    def test_unit_at_zero(self):
        for n in range(1, 6):
            self.assertAlmostEqual(1.0, pn_product(n, 0.0), delta=1e-12)

    def test_matches_lattice_sum(self):
        rng = np.random.default_rng(5)
        omegas = rng.uniform(-3 * math.pi, 3 * math.pi, 400)
        omegas = omegas[np.abs(np.remainder(omegas + math.pi, 2 * math.pi) - math.pi) > 0.05][:100]
        self.assertEqual(100, len(omegas))
        for n in range(1, 6):
            product = pn_product(n, omegas)
            direct = np.array([pn_direct(n, w, 10_000).value for w in omegas])
            self.assertLess(float(np.max(np.abs(product - direct))), 1e-8)

    def test_direct_sum_tail_bound(self):
        estimate = pn_direct(2, 1.0, 100)
        self.assertGreater(estimate.tail_bound, 0)
        self.assertLess(abs(estimate.value - pn_product(2, 1.0)), estimate.tail_bound + 1e-15)
        self.assertEqual(1.0, float(pn_direct(3, 0.0)))
        self.assertRaises(InvalidParameters, pn_direct, 1, 1.0, 0)


if __name__ == '__main__':
    try:
        main(verbosity=2, exit=False)
    except KeyboardInterrupt:
        print()
