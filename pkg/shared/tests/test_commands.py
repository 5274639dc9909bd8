"""
Tests for the verify management command and the verification service.
"""

import json
import os
import tempfile
from io import StringIO
from unittest.mock import patch

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from shared.exceptions import CoeffCapError
from shared.models import RunRecord
from shared.services.verification_service import (
    GROUPS,
    VerificationService,
    check_moment_scaling,
)


class VerifyCommandTest(TestCase):
    """Test manage.py verify all on the cheap gamma group."""

    def _run(self, *args):
        out, err = StringIO(), StringIO()
        call_command("verify", "all", "--groups", "gamma", *args, stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def test_gamma_group_passes(self):
        """Test a passing run prints one line per check and records PASSED."""
        text, err = self._run()
        payload = json.loads(text)
        self.assertEqual(payload["command"], "verify all")
        self.assertTrue(payload["result"]["passed"])
        self.assertEqual(
            [check["check"] for check in payload["result"]["checks"]],
            [
                "gamma-unitarity",
                "conductor-origin",
                "conductor-monotone",
                "conductor-asymptotic",
                "conductor-floor",
            ],
        )
        self.assertIn("PASS gamma-unitarity", err)
        record = RunRecord.objects.get(command="verify all")
        self.assertEqual(record.status, "PASSED")
        self.assertEqual(record.summary, {"checks": 5, "failures": []})

    def test_csv(self):
        """Test the verify CSV form."""
        text, _ = self._run("--format", "csv")
        lines = text.splitlines()
        self.assertEqual(lines[0], "# heckelab-csv schema=verify version=1")
        self.assertEqual(lines[1], "check,passed,value,tolerance")
        self.assertEqual(len(lines), 7)

    def test_deterministic_artifact(self):
        """Test two runs with the same seed give identical artifacts."""
        self.assertEqual(self._run("--seed", "11")[0], self._run("--seed", "11")[0])

    def test_out_path(self):
        """Test --out writes the artifact and records its path."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "verify.json")
            text, _ = self._run("--out", path)
            self.assertIn("artifact written", text)
            with open(path, encoding="utf-8") as handle:
                self.assertTrue(json.load(handle)["result"]["passed"])
        self.assertEqual(RunRecord.objects.get(command="verify all").artifact_path, path)

    def test_relative_out_path(self):
        """Test a relative --out lands in the results directory."""
        with tempfile.TemporaryDirectory() as tmpdir:
            with self.settings(HECKE_LAB={**settings.HECKE_LAB, "RESULTS_DIR": tmpdir}):
                self._run("--out", os.path.join("verify", "gamma.json"))
            self.assertTrue(os.path.isfile(os.path.join(tmpdir, "verify", "gamma.json")))

    def test_failed_check_exit_code(self):
        """Test a check over its tolerance exits with code 1."""
        with patch.dict(
            "shared.services.verification_service.VERIFY_TOLERANCES", {"conductor-origin": -1.0}
        ):
            with self.assertRaises(CommandError) as ctx:
                self._run()
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertEqual(RunRecord.objects.get(command="verify all").status, "FAILED")

    def test_usage_errors(self):
        """Test an unknown group and a zero worker count exit with code 2."""
        for args in (("--groups", "gamma,weather"), ("--threads", "0")):
            with self.assertRaises(CommandError, msg=args) as ctx:
                call_command("verify", "all", *args, stdout=StringIO(), stderr=StringIO())
            self.assertEqual(ctx.exception.returncode, 2)


class VerificationServiceTest(TestCase):
    """Test VerificationService.run_all."""

    def test_groups_in_order(self):
        """Test the group list."""
        self.assertEqual(
            GROUPS, ("coefficients", "gamma", "smoothing", "afe", "kloosterman", "moments")
        )

    def test_lab_error_fails_check_only(self):
        """Test a LabError inside a check is reported as that check failing."""
        with patch(
            "shared.services.verification_service.coeff_table",
            side_effect=CoeffCapError("too large"),
        ):
            with self.assertLogs("shared.services.verification_service", level="ERROR"):
                report = VerificationService.run_all(groups=("coefficients",))
        self.assertFalse(report.passed)
        self.assertEqual(report.failures, ["jacobi", "coefficient-bound"])
        self.assertEqual(report.checks[0].detail["code"], "coeff_cap")

    def test_scaling_skipped_without_D(self):
        """Test the moment scaling check contributes nothing unless D values are given."""
        self.assertEqual(check_moment_scaling(seed=7, threads=1, moment_D=None), [])
