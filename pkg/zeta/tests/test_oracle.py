"""
Tests for the zeta(s) L(s, chi_4) oracle.
"""

import math

from django.test import SimpleTestCase

import mpmath

from shared.exceptions import PoleAtOne
from zeta.oracle import borwein_weights, l_chi4, riemann_zeta, zeta_d0_oracle

CATALAN = 0.915965594177219015


def _mpmath_reference(s):
    value = mpmath.zeta(s) * mpmath.dirichlet(s, [0, 1, 0, -1])
    return complex(value)


class OracleValuesTest(SimpleTestCase):
    """Test closed-form values of the oracle."""

    def test_value_at_two(self):
        """Test zeta(2) L(2, chi_4) = pi^2 / 6 * Catalan."""
        self.assertAlmostEqual(zeta_d0_oracle(2).real, math.pi**2 / 6 * CATALAN, places=12)
        self.assertAlmostEqual(zeta_d0_oracle(2).real, 1.5067030, places=6)

    def test_value_at_zero(self):
        """Test zeta(0, lambda^0) = -1/4."""
        value = zeta_d0_oracle(0)
        self.assertAlmostEqual(value.real, -0.25, places=12)
        self.assertAlmostEqual(value.imag, 0.0, places=12)

    def test_factors(self):
        """Test the two factors separately."""
        self.assertAlmostEqual(riemann_zeta(2).real, math.pi**2 / 6, places=12)
        self.assertAlmostEqual(l_chi4(1).real, math.pi / 4, places=12)
        self.assertAlmostEqual(l_chi4(2).real, CATALAN, places=12)

    def test_trivial_zero(self):
        """Test the functional equation gives the zero at s = -2."""
        self.assertEqual(zeta_d0_oracle(-2), 0)

    def test_pole(self):
        """Test s = 1 raises PoleAtOne."""
        with self.assertRaises(PoleAtOne):
            zeta_d0_oracle(1)
        with self.assertRaises(PoleAtOne):
            riemann_zeta(1)


class OracleAccuracyTest(SimpleTestCase):
    """Test the oracle against mpmath."""

    def test_critical_line(self):
        """Test agreement on the critical line up to height 60."""
        for t in (0.0, 5.0, 14.0, 30.0, 45.0, 60.0):
            s = complex(0.5, t)
            expected = _mpmath_reference(s)
            self.assertLess(abs(zeta_d0_oracle(s) - expected), 1e-9 * (1 + abs(expected)), t)

    def test_strip(self):
        """Test agreement across the strip, including the line Re(s) = 1."""
        for s in (complex(0.1, 20), complex(1.0, 10), complex(1.3, 3), complex(2.0, 40)):
            expected = _mpmath_reference(s)
            self.assertLess(abs(zeta_d0_oracle(s) - expected), 1e-9 * (1 + abs(expected)), s)

    def test_left_of_strip(self):
        """Test the functional-equation branch for Re(s) < 0."""
        s = complex(-0.3, 12)
        expected = _mpmath_reference(s)
        self.assertLess(abs(zeta_d0_oracle(s) - expected), 1e-8 * (1 + abs(expected)))

    def test_conjugate_symmetry(self):
        """Test oracle(conj s) = conj(oracle(s))."""
        s = complex(0.7, 23.5)
        self.assertAlmostEqual(zeta_d0_oracle(s.conjugate()), zeta_d0_oracle(s).conjugate(), 12)


class BorweinWeightsTest(SimpleTestCase):
    """Test the acceleration weights."""

    def test_weights_decrease_from_one(self):
        """Test w_0 is close to 1 and the weights decrease to 0."""
        weights = borwein_weights(20)
        self.assertEqual(len(weights), 20)
        self.assertAlmostEqual(weights[0], 1.0, places=12)
        self.assertTrue(all(a >= b for a, b in zip(weights, weights[1:])))
        self.assertGreater(weights[-1], 0.0)
