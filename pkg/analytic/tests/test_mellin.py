"""
Tests for the Mellin kernel R(z) of the partition of unity.
"""

from django.test import SimpleTestCase

import numpy as np

from analytic.mellin import mellin_inverse, mellin_r, rho_integral, tabulate
from analytic.smoothing import SmoothingConfig, rho
from shared.exceptions import PoleAtZero


class MellinKernelTest(SimpleTestCase):
    """Test R(z) = int_0^inf rho(u) u^(z-1) du."""

    def setUp(self):
        self.cfg = SmoothingConfig()

    def test_odd(self):
        """Test R(-z) = -R(z)."""
        for z in (0.7 + 3.0j, -1.5 + 40.0j, 2.0):
            self.assertLess(abs(mellin_r(self.cfg, -z) + mellin_r(self.cfg, z)), 1e-12)

    def test_value_at_one(self):
        """Test R(1) = int_0^inf rho(u) du."""
        self.assertAlmostEqual(mellin_r(self.cfg, 1.0).real, rho_integral(self.cfg), places=9)

    def test_residue_at_zero(self):
        """Test z R(z) -> 1."""
        z = 1e-6 + 1e-6j
        self.assertLess(abs(z * mellin_r(self.cfg, z) - 1.0), 1e-8)

    def test_pole(self):
        """Test z = 0 raises PoleAtZero."""
        with self.assertRaises(PoleAtZero):
            mellin_r(self.cfg, 0)
        with self.assertRaises(PoleAtZero):
            mellin_r(self.cfg, np.array([1.0, 0.0]))

    def test_array_shape(self):
        """Test array input keeps its shape."""
        z = 0.5 + 1j * np.arange(1, 7).reshape(2, 3)
        values = mellin_r(self.cfg, z)
        self.assertEqual(values.shape, (2, 3))
        self.assertAlmostEqual(values[1, 2], mellin_r(self.cfg, z[1, 2]), places=14)

    def test_conjugate_symmetry(self):
        """Test R(conj z) = conj R(z)."""
        z = 0.25 + 17.0j
        mirrored = mellin_r(self.cfg, z.conjugate())
        self.assertLess(abs(mirrored - mellin_r(self.cfg, z).conjugate()), 1e-14)

    def test_inversion_recovers_rho(self):
        """Test the truncated inverse Mellin integral against rho."""
        for u in (0.5, 0.9, 1.0, 1.2, 2.0):
            self.assertAlmostEqual(mellin_inverse(self.cfg, u), rho(self.cfg, u), places=4)

    def test_tabulate(self):
        """Test the midpoint grid and its values."""
        table = tabulate(self.cfg, 0.3, 0.5, 10.0)
        self.assertEqual(len(table.v), 20)
        self.assertAlmostEqual(table.v[0], 0.25)
        self.assertAlmostEqual(
            table.values[3], mellin_r(self.cfg, 0.3 + 1j * table.v[3]), places=14
        )
