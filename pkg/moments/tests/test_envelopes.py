"""
Tests for the moment envelopes and the envelope report.
"""

import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from moments.envelopes import (
    envelope_l2,
    envelope_report,
    envelope_rows,
    envelope_sarnak,
    envelope_sup,
    envelopes,
    fit_log_slope,
    ratio,
)
from moments.experiment import MomentResult


def _result(D, E, ratios):
    return MomentResult(
        E=E,
        per_d=[],
        error_bar=0.0,
        coarse_E=E,
        converged=True,
        symmetric=True,
        envelope_thm1_14=1.0,
        envelope_thm1_15=1.0,
        envelope_sarnak=1.0,
        ratios=ratios,
        runtime_sec=0.0,
        config_echo={"D": D, "M": 1.0},
    )


class EnvelopeTest(SimpleTestCase):
    """Test the envelope formulas on hand-computed values."""

    def test_l2(self):
        """Test D = M = ||A||_2^2 = 1."""
        value = envelope_l2(1.0, 1.0, 1.0, epsilon=0.1, theta=2 / 9)
        self.assertAlmostEqual(value, 1.0 + 2.0 ** (2 / 9), places=12)

    def test_sup(self):
        """Test D = M = 4 with theta = 0."""
        value = envelope_sup(4.0, 4.0, 8.0, 1.0, epsilon=0.1, theta=0.0)
        self.assertAlmostEqual(value, 4.0**2.1 * 8.0 + 4.0**1.1 * 64.0, places=9)

    def test_sarnak(self):
        """Test D^2 log^4(D + 2)."""
        self.assertAlmostEqual(envelope_sarnak(2.0), 4.0 * math.log(4.0) ** 4, places=12)

    def test_envelopes_keys(self):
        """Test the three named envelopes."""
        bounds = envelopes(2.0, 1.0, 4.0, 1.0, 0.1, 2 / 9)
        self.assertEqual(set(bounds), {"thm1_14", "thm1_15", "sarnak"})
        self.assertEqual(bounds["thm1_14"], envelope_l2(2.0, 1.0, 4.0, 0.1, 2 / 9))

    def test_zero_ratio(self):
        """Test 0 / 0 reads as 0."""
        self.assertEqual(ratio(0.0, 0.0), 0.0)
        self.assertEqual(ratio(3.0, 2.0), 1.5)


class LogSlopeTest(SimpleTestCase):
    """Test the log-log slope fit."""

    def test_exact_power(self):
        """Test E = 3 D^2 gives slope 2."""
        D = [2.0, 4.0, 8.0, 16.0]
        self.assertAlmostEqual(fit_log_slope(D, [3.0 * d * d for d in D]), 2.0, places=10)

    def test_needs_two_points(self):
        """Test an empty or single-D sweep is rejected."""
        for D_values, E_values in (([], []), ([2.0], [1.0]), ([2.0, 2.0], [1.0, 3.0])):
            with self.assertRaises(ValidationError, msg=D_values):
                fit_log_slope(D_values, E_values)
        with self.assertRaises(ValidationError):
            fit_log_slope([2.0, 4.0], [1.0])

    def test_no_positive_moments(self):
        """Test E = 0 everywhere gives no slope."""
        self.assertIsNone(fit_log_slope([2.0, 4.0], [0.0, 0.0]))

    def test_skips_zero(self):
        """Test rows with E = 0 are left out of the fit."""
        slope = fit_log_slope([1.0, 2.0, 4.0], [0.0, 4.0, 16.0])
        self.assertAlmostEqual(slope, 2.0, places=10)


class EnvelopeReportTest(SimpleTestCase):
    """Test the envelope report rows and the watermark."""

    def test_rows(self):
        """Test one row per result and the fitted slope."""
        ratios = {"thm1_14": 0.5, "thm1_15": 0.25, "sarnak": 1.0}
        report = envelope_report([_result(2.0, 8.0, ratios), _result(4.0, 64.0, ratios)])
        self.assertEqual(len(report.rows), 2)
        self.assertEqual(report.flagged, 0)
        self.assertAlmostEqual(report.slope, 3.0, places=10)
        self.assertEqual(report.rows[0]["ratio_sarnak"], 1.0)
        self.assertEqual(report.as_record()["watermark"], 1e4)

    def test_watermark(self):
        """Test ratios above the watermark are flagged and logged at WARNING."""
        high = {"thm1_14": 50.0, "thm1_15": 1.0, "sarnak": 1.0}
        low = {"thm1_14": 0.5, "thm1_15": 1.0, "sarnak": 1.0}
        with self.assertLogs("moments.envelopes", level="WARNING") as logs:
            report = envelope_report(
                [_result(2.0, 8.0, high), _result(4.0, 64.0, low)], watermark=10.0
            )
        self.assertEqual(report.flagged, 1)
        self.assertTrue(report.rows[0]["flagged"])
        self.assertFalse(report.rows[1]["flagged"])
        self.assertIn("exceeds the watermark", logs.output[0])

    def test_rejects_fewer_than_two_D(self):
        """Test an empty result list or a single D is a validation error."""
        ratios = {"thm1_14": 0.5, "thm1_15": 0.25, "sarnak": 1.0}
        for results in ([], [_result(2.0, 8.0, ratios)], [_result(2.0, 8.0, ratios)] * 2):
            with self.assertRaises(ValidationError, msg=len(results)):
                envelope_report(results)

    def test_single_run_rows(self):
        """Test envelope_rows flags a single run without fitting a slope."""
        high = {"thm1_14": 50.0, "thm1_15": 1.0, "sarnak": 1.0}
        with self.assertLogs("moments.envelopes", level="WARNING"):
            rows = envelope_rows([_result(2.0, 8.0, high)], watermark=10.0)
        self.assertEqual(len(rows), 1)
        self.assertTrue(rows[0]["flagged"])
