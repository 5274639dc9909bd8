"""
Tests for the Taylor coefficients of the normalised gamma-factor ratio.
"""

import math

from django.test import SimpleTestCase

import mpmath

from analytic.conductor import conductor
from analytic.taylor import (
    afe_coefficients,
    analyticity_radius,
    coefficient_growth_constant,
    g_function,
)
from shared.exceptions import HypothesisError


def _psi(order, z):
    return complex(mpmath.psi(order, z))


class AfeCoefficientsTest(SimpleTestCase):
    """Test a_k against closed forms from the digamma function."""

    def test_first_coefficient_vanishes_on_critical_line(self):
        """Test a_1 = 0 at sigma = 1/2, since T is built from the same digamma."""
        for d in (0, 1, -2, 5):
            coeffs = afe_coefficients(d, complex(0.5, 12.0), K=3)
            self.assertLess(abs(coeffs[1]), 1e-10)

    def test_first_coefficient_off_line(self):
        """Test a_1 = psi(2|d| + 1 - s) + psi(2|d| + s) - 2 log pi - log T."""
        d, s = 2, complex(0.8, 9.0)
        a = 2 * abs(d)
        expected = (
            _psi(0, a + 1 - s) + _psi(0, a + s) - 2.0 * math.log(math.pi)
            - math.log(conductor(d, s.imag))
        )
        coeffs = afe_coefficients(d, s, K=2)
        self.assertLess(abs(coeffs[1] - expected), 1e-10)

    def test_second_coefficient_on_critical_line(self):
        """Test a_2 = (psi'(2|d| + 1 - s) - psi'(2|d| + s)) / 2 when a_1 = 0."""
        d, s = 1, complex(0.5, 20.0)
        expected = 0.5 * (_psi(1, 2 + 1 - s) - _psi(1, 2 + s))
        coeffs = afe_coefficients(d, s, K=2)
        self.assertLess(abs(coeffs[2] - expected), 1e-10)

    def test_expansion_matches_function_near_zero(self):
        """Test sum a_k tau^k tracks G_d(s, tau) for small tau."""
        d, s = 3, complex(0.4, 15.0)
        coeffs = afe_coefficients(d, s, K=4)
        tau = 0.01 * complex(1.0, 1.0)
        direct = g_function(d, s, tau, T=coeffs.conductor)
        self.assertLess(abs(direct - coeffs.expansion(tau)), 1e-9)

    def test_radius(self):
        """Test the analyticity radius and the contour radius."""
        coeffs = afe_coefficients(0, complex(0.5, 30.0), K=1)
        self.assertAlmostEqual(coeffs.radius, analyticity_radius(0, complex(0.5, 30.0)))
        self.assertEqual(coeffs.contour_radius, 1.0)

    def test_indexing(self):
        """Test a_k is 1-based and bounded by K."""
        coeffs = afe_coefficients(0, complex(0.5, 30.0), K=2)
        self.assertEqual(coeffs.K, 2)
        with self.assertRaises(IndexError):
            coeffs[3]
        with self.assertRaises(IndexError):
            coeffs[0]

    def test_record(self):
        """Test the serialisable form."""
        record = afe_coefficients(1, complex(0.5, 5.0), K=2).as_record()
        self.assertEqual([row["k"] for row in record["a"]], [1, 2])
        self.assertEqual(record["d"], 1)

    def test_hypotheses(self):
        """Test sigma outside [-1/2, 3/2] and a conductor below T(0, 1/2) are rejected."""
        with self.assertRaises(HypothesisError):
            afe_coefficients(0, complex(1.7, 20.0), K=2)
        with self.assertRaises(HypothesisError):
            afe_coefficients(0, complex(0.5, 0.0), K=2)


class GrowthConstantTest(SimpleTestCase):
    """Test the fitted coefficient constant."""

    def test_growth_constant_is_logged(self):
        """Test the constant is positive and reported at INFO."""
        grid = [(d, complex(0.5, t)) for d in (0, 2) for t in (10.0, 40.0)]
        with self.assertLogs("analytic.taylor", level="INFO") as logs:
            value = coefficient_growth_constant(grid, K=3)
        self.assertGreater(value, 0.0)
        self.assertTrue(math.isfinite(value))
        self.assertIn("coefficient growth constant", logs.output[0])
