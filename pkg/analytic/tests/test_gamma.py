"""
Tests for the Stirling-series gamma engine and the gamma factor of the functional equation.
"""

import math

from django.test import SimpleTestCase

import mpmath
import numpy as np

from analytic.conductor import (
    conductor,
    conductor_at_zero,
    gamma_factor,
    gamma_factor_ratio,
)
from analytic.gamma import GammaEngine, digamma, digamma_asymptotic_gap, loggamma
from shared.constants import C0
from shared.exceptions import PoleError

SAMPLE_POINTS = (0.5, 3.7 + 2.0j, -2.5 + 0.3j, 1.0 + 50.0j, 0.25 - 7.0j)


class GammaEngineTest(SimpleTestCase):
    """Test log Gamma and psi against mpmath."""

    def test_gamma_matches_mpmath(self):
        """Test exp(loggamma(z)) equals Gamma(z)."""
        for z in SAMPLE_POINTS:
            expected = complex(mpmath.gamma(z))
            value = complex(np.exp(loggamma(z)))
            self.assertLess(abs(value - expected) / abs(expected), 1e-11, z)

    def test_digamma_matches_mpmath(self):
        """Test psi(z) to near machine precision."""
        for z in SAMPLE_POINTS:
            expected = complex(mpmath.digamma(z))
            self.assertLess(abs(digamma(z) - expected), 1e-11, z)

    def test_vectorised_arguments(self):
        """Test array input keeps its shape and matches scalar evaluation."""
        z = np.array([[0.5, 2.0 + 1.0j], [7.5, -0.5 + 4.0j]])
        values = digamma(z)
        self.assertEqual(values.shape, (2, 2))
        self.assertAlmostEqual(values[1, 0], digamma(7.5), places=14)

    def test_poles(self):
        """Test non-positive integers raise PoleError."""
        for z in (0, -3, -3.0 + 0.0j):
            with self.assertRaises(PoleError):
                loggamma(z)
            with self.assertRaises(PoleError):
                digamma(z)

    def test_threshold_does_not_change_values(self):
        """Test a different recurrence threshold gives the same digamma."""
        engine = GammaEngine(asymptotic_threshold=20.0)
        for z in SAMPLE_POINTS:
            self.assertLess(abs(engine.digamma(z) - digamma(z)), 1e-12)

    def test_digamma_asymptotic_gap(self):
        """Test psi(z) - log z + 1/(2z) behaves like -1/(12 z^2)."""
        z = 100.0 + 30.0j
        gap = digamma_asymptotic_gap(z)
        self.assertLess(abs(gap + 1.0 / (12.0 * z * z)), 1e-9)


class GammaFactorTest(SimpleTestCase):
    """Test X_d(s) = pi^(2s-1) Gamma(2|d| + 1 - s) / Gamma(2|d| + s)."""

    def test_matches_definition(self):
        """Test against the defining ratio evaluated with mpmath."""
        for d, s in ((0, 0.3 + 5.0j), (2, -0.2 + 11.0j), (-3, 1.2 - 4.0j)):
            a = 2 * abs(d)
            expected = complex(
                mpmath.power(mpmath.pi, 2 * s - 1) * mpmath.gamma(a + 1 - s) / mpmath.gamma(a + s)
            )
            self.assertLess(abs(gamma_factor(d, s) - expected) / abs(expected), 1e-10)

    def test_unitary_on_critical_line(self):
        """Test |X_d(1/2 + it)| = 1."""
        for d in (0, 1, 4):
            for t in (0.0, 3.0, 25.0, 140.0):
                self.assertAlmostEqual(abs(gamma_factor(d, complex(0.5, t))), 1.0, places=10)

    def test_reflection(self):
        """Test X_d(s) X_d(1 - s) = 1."""
        for d, s in ((0, 0.2 + 9.0j), (3, 1.1 + 2.0j)):
            product = gamma_factor(d, s) * gamma_factor(d, 1 - s)
            self.assertLess(abs(product - 1.0), 1e-10)

    def test_zero_and_pole(self):
        """Test X_0(0) = 0 and X_0 has a pole at s = 1."""
        self.assertEqual(gamma_factor(0, 0), 0)
        with self.assertRaises(PoleError):
            gamma_factor(0, 1)


class ConductorTest(SimpleTestCase):
    """Test the analytic conductor T(d, t)."""

    def test_floor_at_origin(self):
        """Test T(0, 0) = C0^-2."""
        self.assertAlmostEqual(conductor(0, 0.0) * C0 * C0, 1.0, places=12)

    def test_closed_form_at_zero(self):
        """Test T(d, 0) against its closed form."""
        for d in range(0, 6):
            self.assertAlmostEqual(conductor(d, 0.0) / conductor_at_zero(d), 1.0, places=11)

    def test_known_value(self):
        """Test T(1, 0) = e^(16/3) / C0^2."""
        self.assertAlmostEqual(conductor(1, 0.0), 0.4135, places=3)
        self.assertAlmostEqual(conductor(-1, 0.0), conductor(1, 0.0), places=14)

    def test_large_height(self):
        """Test T(0, t) ~ t^2 / pi^2."""
        t = 1000.0
        self.assertAlmostEqual(conductor(0, t) / (t * t / math.pi**2), 1.0, places=4)

    def test_vectorised_over_t(self):
        """Test array heights."""
        t = np.linspace(0.0, 50.0, 11)
        values = conductor(2, t)
        self.assertEqual(values.shape, (11,))
        self.assertTrue(np.all(np.diff(values) > 0))

    def test_gamma_factor_ratio(self):
        """Test |X_d(s)| T^(sigma - 1/2) is 1 on the line and close to 1 high up."""
        self.assertAlmostEqual(gamma_factor_ratio(2, complex(0.5, 7.0)), 1.0, places=10)
        for sigma in (-0.3, 1.3):
            self.assertAlmostEqual(gamma_factor_ratio(0, complex(sigma, 200.0)), 1.0, places=2)
