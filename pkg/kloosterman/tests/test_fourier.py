"""
Tests for Fourier transforms of the shipped test functions.
"""

import cmath
import math

from django.test import SimpleTestCase

import numpy as np
from scipy.integrate import quad

from analytic.smoothing import bump
from kloosterman.fourier import (
    BumpTest,
    GaussianTest,
    LaplacianTest,
    ScaledTest,
    fourier_hat,
    hankel_transform,
)
from shared.exceptions import UnsupportedTestFunction

SAMPLE_W = (0j, 0.3 + 0.1j, -0.7 + 0.4j, 1.2j, 1.5 - 1.5j, 2.5 + 0.5j)


class GaussianTransformTest(SimpleTestCase):
    """Test transforms of Gaussians against their closed forms."""

    def test_self_dual(self):
        """Test exp(-pi |z|^2) is its own transform to 1e-10."""
        f = GaussianTest()
        for w in SAMPLE_W:
            expected = math.exp(-math.pi * abs(w) ** 2)
            self.assertLess(abs(fourier_hat(f, w) - expected), 1e-10, w)

    def test_scale(self):
        """Test sigma0 != 1 against sigma0^2 exp(-pi sigma0^2 |w|^2)."""
        f = GaussianTest(sigma0=0.6)
        for w in SAMPLE_W:
            self.assertLess(abs(fourier_hat(f, w) - complex(f.hat(w))), 1e-10, w)

    def test_polar_matches_hankel(self):
        """Test both quadratures agree on a radial function."""
        f = GaussianTest(sigma0=1.3)
        for w in SAMPLE_W:
            hankel = fourier_hat(f, w, method="hankel")
            polar = fourier_hat(f, w, method="polar")
            self.assertLess(abs(hankel - polar), 1e-10, w)

    def test_shifted_gaussian(self):
        """Test a non-radial Gaussian picks up the phase e(-Re(w center))."""
        f = GaussianTest(center=0.4 - 0.3j)
        self.assertFalse(f.radial)
        for w in SAMPLE_W:
            self.assertLess(abs(fourier_hat(f, w) - complex(f.hat(w))), 1e-9, w)

    def test_radial_transform_is_radial(self):
        """Test f^ depends on |w| only for radial f."""
        f = GaussianTest(sigma0=0.8)
        w = 0.9 + 0.4j
        for unit in (1j, -1, cmath.exp(0.7j)):
            rotated = fourier_hat(f, w * unit, method="polar")
            self.assertLess(abs(fourier_hat(f, w) - rotated), 1e-10)


class OperatorTest(SimpleTestCase):
    """Test the rotation-dilation and Laplacian identities."""

    def test_rotation_dilation(self):
        """Test (S_a f)^(w) = |a|^-2 f^(w / a) for a = 2+i."""
        a = 2 + 1j
        f = GaussianTest()
        scaled = ScaledTest(f, a)
        for w in SAMPLE_W:
            expected = complex(f.hat(w / a)) / abs(a) ** 2
            self.assertLess(abs(fourier_hat(scaled, w) - expected), 1e-10, w)
            self.assertLess(abs(complex(scaled.hat(w)) - expected), 1e-15, w)

    def test_rotation_dilation_of_shifted_gaussian(self):
        """Test the same identity through the polar quadrature."""
        a = 2 + 1j
        f = GaussianTest(sigma0=1.1, center=0.5 + 0.5j)
        scaled = ScaledTest(f, a)
        self.assertFalse(scaled.radial)
        for w in SAMPLE_W[:4]:
            expected = complex(f.hat(w / a)) / abs(a) ** 2
            self.assertLess(abs(fourier_hat(scaled, w) - expected), 1e-9, w)

    def test_laplacian_identity(self):
        """Test |2 pi w|^2 f^(w) = -(Delta f)^(w) at 20 sample points."""
        f = GaussianTest(sigma0=0.9)
        rng = np.random.default_rng(17)
        points = rng.uniform(-2.0, 2.0, size=(20, 2))
        for x, y in points:
            w = complex(x, y)
            lhs = abs(2 * math.pi * w) ** 2 * complex(f.hat(w))
            rhs = -fourier_hat(LaplacianTest(f), w)
            self.assertLess(abs(lhs - rhs), 1e-8, w)


class BumpTransformTest(SimpleTestCase):
    """Test the compactly supported radial test function."""

    def test_vanishes_outside_support(self):
        """Test f(z) = 0 for |z| >= radius."""
        f = BumpTest(radius=2.0)
        values = f(np.array([2.0, 2.5j, -3.0 + 1.0j]))
        np.testing.assert_array_equal(values, np.zeros(3))
        self.assertGreater(float(f(0j)), 0.0)

    def test_value_at_zero(self):
        """Test f^(0) is the integral of f."""
        f = BumpTest()
        integral, _ = quad(lambda r: bump(r) * r, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12)
        expected = 2.0 * math.pi * integral
        self.assertLess(abs(fourier_hat(f, 0) - expected), 1e-8)

    def test_real_and_radial(self):
        """Test the transform is real and agrees between quadratures."""
        f = BumpTest(radius=1.5)
        for w in SAMPLE_W:
            value = fourier_hat(f, w)
            self.assertLess(abs(value.imag), 1e-14)
            self.assertLess(abs(value - fourier_hat(f, w, method="polar")), 1e-10, w)

    def test_array_matches_scalar(self):
        """Test an unsorted frequency array transforms like the scalars one by one."""
        f = BumpTest(radius=1.5)
        rho = np.array([2.5, 0.0, 0.7, 2.5, 1.2])
        values = hankel_transform(f, rho)
        self.assertEqual(values.shape, rho.shape)
        for r, value in zip(rho.tolist(), values.tolist()):
            self.assertLess(abs(value - hankel_transform(f, r)), 1e-10, r)
        self.assertLess(abs(hankel_transform(f, 0.7) - fourier_hat(f, 0.7)), 1e-10)


class UnsupportedTest(SimpleTestCase):
    """Test rejection of unsupported inputs."""

    def test_plain_callable(self):
        """Test an arbitrary callable is rejected."""
        with self.assertRaises(UnsupportedTestFunction):
            fourier_hat(lambda z: z, 0.5)

    def test_hankel_needs_radial(self):
        """Test the Hankel route refuses a shifted Gaussian."""
        with self.assertRaises(UnsupportedTestFunction):
            fourier_hat(GaussianTest(center=1j), 0.5, method="hankel")

    def test_unknown_method(self):
        """Test an unknown quadrature name is rejected."""
        with self.assertRaises(UnsupportedTestFunction):
            fourier_hat(GaussianTest(), 0.5, method="fft")

    def test_laplacian_of_bump(self):
        """Test Laplacians are only shipped for Gaussians."""
        with self.assertRaises(UnsupportedTestFunction):
            fourier_hat(LaplacianTest(BumpTest()), 0.5)
