# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from cayleyising.api import DomainError
from cayleyising.criticality import fixed_points, h_c, saddle_curvature
from cayleyising.model import CustomList, FieldProfile, PowerLaw, \
                              params_from_theta
from cayleyising.recursion import Extended, iterate_backward, kernel_F, \
                                  kernel_F_prime, kernel_F_second, psi, \
                                  psi_prime

thetas = st.floats(min_value=0.01, max_value=0.99)
reals = st.floats(min_value=-30, max_value=30)


class KernelTestCase(unittest.TestCase):

    def test_origin(self):
        self.assertEqual(kernel_F(0.0, 0.5), 0.0)

    def test_infinite_argument(self):
        self.assertAlmostEqual(kernel_F(Extended.PLUS_INFINITY, 0.5),
                               0.5493061443340549, places=14)
        self.assertAlmostEqual(kernel_F(Extended.MINUS_INFINITY, 0.5),
                               -0.5493061443340549, places=14)

    def test_parse_extended(self):
        self.assertIs(Extended.parse('+inf'), Extended.PLUS_INFINITY)
        self.assertIs(Extended.parse('-inf'), Extended.MINUS_INFINITY)
        self.assertIs(Extended.parse('minus-inf'), Extended.MINUS_INFINITY)
        self.assertIs(Extended.parse(Extended.MINUS_INFINITY),
                      Extended.MINUS_INFINITY)
        self.assertEqual(Extended.parse('0.25'), 0.25)
        self.assertRaises(ValueError, Extended.parse, 'plus-ish')

    def test_reference_value(self):
        self.assertAlmostEqual(kernel_F(1.0, 0.8), 0.707768045632,
                               places=11)

    def test_vectorised(self):
        xs = np.array([-1.0, 0.0, 1.0])
        values = kernel_F(xs, 0.8)
        self.assertEqual(values.shape, (3,))
        self.assertAlmostEqual(values[2], kernel_F(1.0, 0.8), places=15)

    def test_bad_theta(self):
        self.assertRaises(DomainError, kernel_F, 0.0, 1.0)
        self.assertRaises(DomainError, kernel_F, 0.0, 0.0)

    @given(reals, thetas)
    @settings(max_examples=200, deadline=None)
    def test_odd(self, x, theta):
        self.assertAlmostEqual(kernel_F(-x, theta), -kernel_F(x, theta),
                               delta=1e-15)

    @given(reals, reals, thetas)
    @settings(max_examples=200, deadline=None)
    def test_monotone(self, x, y, theta):
        x, y = min(x, y), max(x, y)
        self.assertLessEqual(kernel_F(x, theta), kernel_F(y, theta) + 1e-15)

    @given(reals, thetas)
    @settings(max_examples=200, deadline=None)
    def test_bounded(self, x, theta):
        self.assertLessEqual(abs(kernel_F(x, theta)),
                             np.arctanh(theta) * (1 + 1e-14))


class DerivativeTestCase(unittest.TestCase):

    def test_at_origin(self):
        for theta in (0.2, 0.5, 0.9):
            self.assertAlmostEqual(kernel_F_prime(0.0, theta), theta,
                                   places=15)
            self.assertEqual(kernel_F_second(0.0, theta), 0.0)

    def test_first_derivative_reference(self):
        step = 1e-6
        fd = (kernel_F(1.0 + step, 0.8) - kernel_F(1.0 - step, 0.8)) / \
            (2 * step)
        self.assertAlmostEqual(kernel_F_prime(1.0, 0.8), fd, delta=1e-8)

    def test_against_finite_differences(self):
        step = 1e-5
        xs = np.linspace(-5, 5, 41)
        for theta in (0.3, 0.6, 0.9):
            fd1 = (kernel_F(xs + step, theta) - kernel_F(xs - step, theta)) \
                / (2 * step)
            fd2 = (kernel_F_prime(xs + step, theta) -
                   kernel_F_prime(xs - step, theta)) / (2 * step)
            np.testing.assert_allclose(kernel_F_prime(xs, theta), fd1,
                                       rtol=0, atol=1e-7)
            np.testing.assert_allclose(kernel_F_second(xs, theta), fd2,
                                       rtol=0, atol=1e-7)


class PsiTestCase(unittest.TestCase):

    def setUp(self):
        self.params = params_from_theta(2, 1.0, 0.8)
        self.hc = h_c(self.params)

    def test_origin(self):
        self.assertEqual(psi(0.0, 0.0, self.params), 0.0)

    def test_infinite_argument(self):
        self.assertAlmostEqual(psi(Extended.PLUS_INFINITY, -self.hc,
                                   self.params),
                               1.779176573076, places=10)

    def test_increasing(self):
        for h in (-1.0, 0.0, 0.7):
            self.assertGreater(psi(1.0, h, self.params),
                               psi(0.0, h, self.params))

    def test_mean_value_bound(self):
        rng = np.random.default_rng(7)
        for x, y in rng.uniform(-4, 4, size=(100, 2)):
            x, y = min(x, y), max(x, y)
            grid = np.linspace(x, y, 201)
            bound = np.max(psi_prime(grid, self.params)) * (y - x)
            spread = psi(y, 0.1, self.params) - psi(x, 0.1, self.params)
            self.assertLessEqual(spread, bound + 1e-12)


class IterateBackwardTestCase(unittest.TestCase):

    def setUp(self):
        self.params = params_from_theta(2, 1.0, 0.8)
        self.hc = h_c(self.params)

    def test_fixed_point_seed(self):
        b_star = fixed_points(0.0, self.params).b_plus
        trace = iterate_backward(FieldProfile.homogeneous(0.0), self.params,
                                 30, 1, b_star)
        for m in range(1, 32):
            self.assertAlmostEqual(trace.value_at(m), b_star, places=11)

    def test_attracting_from_infinity(self):
        b_star = fixed_points(0.0, self.params).b_plus
        trace = iterate_backward(FieldProfile.homogeneous(0.0), self.params,
                                 41, 1, Extended.PLUS_INFINITY)
        self.assertAlmostEqual(trace.value_at(1), b_star, delta=1e-6)

    def test_saddle_approach_from_above(self):
        b_plus = fixed_points(-self.hc, self.params).b_plus
        profile = FieldProfile.homogeneous(-self.hc)
        trace = iterate_backward(profile, self.params, 4000, 1,
                                 Extended.PLUS_INFINITY)
        values = np.asarray(trace.values[:-1])
        # Decreasing toward the root, never below the saddle.
        self.assertTrue(np.all(np.diff(values) > 0))
        self.assertTrue(np.all(values > b_plus))
        # Saddle-node convergence is algebraic: (b_j - b⁺) ~ 1/(c j).
        excess = trace.value_at(1) - b_plus
        self.assertAlmostEqual(4000 * excess * saddle_curvature(self.params),
                               1.0, delta=0.01)

    def test_zero_perturbation_is_homogeneous(self):
        perturbed = iterate_backward(
            FieldProfile.critical_minus(CustomList([])), self.params, 50, 1,
            Extended.PLUS_INFINITY)
        homogeneous = iterate_backward(
            FieldProfile.homogeneous(-self.hc), self.params, 50, 1,
            Extended.PLUS_INFINITY)
        np.testing.assert_array_equal(perturbed.values, homogeneous.values)

    def test_residual(self):
        profile = FieldProfile.critical_minus(PowerLaw(2.0))
        trace = iterate_backward(profile, self.params, 300, 3,
                                 Extended.MINUS_INFINITY)
        self.assertLessEqual(trace.max_residual(), 1e-12)
        self.assertEqual(trace.value_at(301), -np.inf)
        self.assertRaises(IndexError, trace.value_at, 2)

    def test_seed_order_preserved(self):
        profile = FieldProfile.critical_minus(PowerLaw(1.0))
        low = iterate_backward(profile, self.params, 200, 1, -0.5)
        high = iterate_backward(profile, self.params, 200, 1, 0.5)
        self.assertTrue(np.all(low.values <= high.values))

    def test_bad_window(self):
        profile = FieldProfile.homogeneous(0.0)
        self.assertRaises(DomainError, iterate_backward, profile,
                          self.params, 3, 5, 0.0)
        self.assertRaises(DomainError, iterate_backward, profile,
                          self.params, 3, 0, 0.0)


def test_suite():
    suite = unittest.TestSuite()
    loader = unittest.defaultTestLoader
    suite.addTest(loader.loadTestsFromTestCase(KernelTestCase))
    suite.addTest(loader.loadTestsFromTestCase(DerivativeTestCase))
    suite.addTest(loader.loadTestsFromTestCase(PsiTestCase))
    suite.addTest(loader.loadTestsFromTestCase(IterateBackwardTestCase))
    return suite


if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
