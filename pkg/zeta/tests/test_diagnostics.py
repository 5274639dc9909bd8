"""
Tests for the functional-equation and envelope diagnostics.
"""

import math

from django.test import SimpleTestCase

from shared.exceptions import DomainError, HypothesisError, StripError
from zeta.config import AfeConfig
from zeta.diagnostics import critical_line_majorant, fe_residual, k_convergence, reference_bounds


def _mellin():
    return AfeConfig.from_settings(kernel="mellin", K=4)


class FunctionalEquationResidualTest(SimpleTestCase):
    """Test fe_residual."""

    def test_small_residuals(self):
        """Test the residual stays below 0.05 across characters and heights."""
        for d in (0, 1, -3, 8):
            for t in (10.0, 30.0):
                for sigma in (0.4, 0.6):
                    residual = fe_residual(d, complex(sigma, t), _mellin())
                    self.assertLessEqual(residual, 0.05, (d, t, sigma))

    def test_fixed_point(self):
        """Test s = 1/2 with d = 0, where X_0(1/2) = 1."""
        self.assertLess(fe_residual(0, 0.5, _mellin()), 1e-6)

    def test_strip(self):
        """Test a point outside the strip is rejected."""
        with self.assertRaises(StripError):
            fe_residual(0, complex(1.5, 3.0))


class ReferenceBoundsTest(SimpleTestCase):
    """Test the convexity and subconvexity envelopes."""

    def test_critical_line_exponents(self):
        """Test sigma = 1/2 gives convexity exponent 1/4 + eps."""
        bounds = reference_bounds(0, complex(0.5, 20.0), epsilon=0.05)
        self.assertAlmostEqual(bounds.convexity_exponent, 0.3)
        self.assertAlmostEqual(bounds.subconvexity_exponent, 1.0 / 6.0 + 0.05)

    def test_right_edge(self):
        """Test sigma = 4/3 gives the constant envelope 1."""
        bounds = reference_bounds(2, complex(4.0 / 3.0, 5.0), epsilon=0.05)
        self.assertEqual(bounds.convexity_exponent, 0.0)
        self.assertEqual(bounds.convexity, 1.0)

    def test_subconvex_envelope(self):
        """Test T = 10^4 gives 10^(4 (1/6 + 0.05))."""
        bounds = reference_bounds(0, 0.5, T=1e4, epsilon=0.05)
        self.assertAlmostEqual(bounds.subconvexity, 10 ** (4 * (1.0 / 6.0 + 0.05)))

    def test_default_epsilon_from_settings(self):
        """Test epsilon defaults to HECKE_LAB['EPSILON_REFERENCE']."""
        with self.settings(HECKE_LAB={"EPSILON_REFERENCE": 0.01}):
            bounds = reference_bounds(0, 0.5, T=100.0)
        self.assertEqual(bounds.epsilon, 0.01)

    def test_record(self):
        """Test the serialized record."""
        record = reference_bounds(1, complex(0.2, 3.0)).as_record()
        self.assertEqual(
            set(record),
            {
                "T",
                "epsilon",
                "convexity",
                "convexity_exponent",
                "subconvexity",
                "subconvexity_exponent",
            },
        )


class CriticalLineMajorantTest(SimpleTestCase):
    """Test the smoothed single-sum majorant."""

    def test_ratio_finite(self):
        """Test h = 2, d = 0, t = 40 gives a finite positive ratio."""
        check = critical_line_majorant(0, 40.0, 2, _mellin())
        self.assertGreater(check.rhs_integral, 0.0)
        self.assertTrue(math.isfinite(check.ratio))
        self.assertGreater(check.ratio, 0.0)

    def test_empty_window(self):
        """Test a tiny scale leaves the Dirichlet window empty and rhs = 0."""
        check = critical_line_majorant(0, 0.5, 3, _mellin())
        self.assertEqual(check.rhs_integral, 0.0)
        self.assertEqual(check.ratio, math.inf)

    def test_quadrature_refinement(self):
        """Test doubling the Simpson intervals changes the integral by under 1%."""
        coarse = critical_line_majorant(6, 10.0, 4, _mellin(), intervals=64)
        fine = critical_line_majorant(6, 10.0, 4, _mellin(), intervals=128)
        self.assertLess(abs(fine.rhs_integral / coarse.rhs_integral - 1.0), 0.01)
        self.assertEqual(fine.lhs, coarse.lhs)

    def test_scale_hypothesis(self):
        """Test T* far from |2d + it|^2 / pi^2 raises HypothesisError."""
        with self.assertRaises(HypothesisError):
            critical_line_majorant(0, 40.0, 2, _mellin(), T_star=1e6)

    def test_power_must_be_positive(self):
        """Test h = 0 raises DomainError."""
        with self.assertRaises(DomainError):
            critical_line_majorant(0, 40.0, 0, _mellin())


class KConvergenceTest(SimpleTestCase):
    """Test the K-convergence report."""

    def test_report_shape(self):
        """Test one row per order and a boolean monotonicity flag."""
        report = k_convergence(0, complex(0.5, 20.0))
        self.assertEqual([row["K"] for row in report["rows"]], [0, 1, 2, 4])
        self.assertIsInstance(report["monotone"], bool)
        for row in report["rows"]:
            self.assertGreaterEqual(row["abs_err"], 0.0)
