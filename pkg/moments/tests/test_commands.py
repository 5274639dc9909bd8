"""
Tests for the moment and meansquare management commands.
"""

import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from shared.models import RunRecord


class MomentCommandTest(TestCase):
    """Test manage.py moment run / report."""

    def _run(self, *args):
        out = StringIO()
        call_command("moment", *args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def test_run_json(self):
        """Test a zero-coefficient run is recorded as PASSED."""
        payload = json.loads(self._run("run", "--D", "2", "--M", "2", "--family", "zero"))
        self.assertEqual(payload["command"], "moment run")
        self.assertEqual(payload["result"]["E"], 0.0)
        self.assertFalse(payload["result"]["flagged"])
        self.assertEqual(payload["result"]["config"]["family"], "zero")
        record = RunRecord.objects.get(command="moment run")
        self.assertEqual(record.status, "PASSED")
        self.assertEqual(record.summary["E"], 0.0)

    def test_run_csv(self):
        """Test the moment CSV header and row."""
        text = self._run("run", "--D", "1", "--family", "zero", "--format", "csv")
        lines = text.splitlines()
        self.assertEqual(lines[0], "# heckelab-csv schema=moment version=1")
        self.assertTrue(lines[1].startswith("D,M,E,error_bar,"))
        self.assertEqual(len(lines), 3)

    def test_run_from_config(self):
        """Test a configuration file with options overriding it."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "experiment.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump({"D": 4, "A": {"norm_bound": 1, "family": "zero"}}, handle)
            payload = json.loads(self._run("run", "--config", path, "--D", "1"))
        self.assertEqual(payload["result"]["config"]["D"], 1.0)
        self.assertEqual(payload["result"]["config"]["support"], 0)

    def test_run_needs_D(self):
        """Test run without --D or --config exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            self._run("run", "--family", "zero")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_desk_cap_exit_code(self):
        """Test D above the desk cap exits with code 2 and is recorded as ERROR."""
        with self.assertRaises(CommandError) as ctx:
            self._run("run", "--D", "30", "--family", "zero")
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(RunRecord.objects.get(command="moment run").status, "ERROR")

    def test_report_csv(self):
        """Test one envelope-report row per D."""
        text = self._run("report", "--D", "1,2", "--family", "zero", "--format", "csv")
        lines = text.splitlines()
        self.assertEqual(lines[0], "# heckelab-csv schema=envelope-report version=1")
        self.assertTrue(lines[1].endswith(",converged,flagged"))
        self.assertEqual(len(lines), 4)
        self.assertEqual(RunRecord.objects.get(command="moment report").summary["rows"], 2)

    def test_report_needs_two_D(self):
        """Test a single D value is a usage error recorded as ERROR."""
        with self.assertRaises(CommandError) as ctx:
            self._run("report", "--D", "8", "--family", "zero")
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(RunRecord.objects.get(command="moment report").status, "ERROR")


class MeanSquareCommandTest(TestCase):
    """Test manage.py meansquare check."""

    def _run(self, *args):
        out = StringIO()
        call_command("meansquare", "check", *args, stdout=out, stderr=StringIO())
        return json.loads(out.getvalue())

    def test_orbit_with_lattice(self):
        """Test a single orbit passes the lattice check."""
        payload = self._run(
            "--D", "6", "--X", "2", "--family", "orbit", "--xi", "2,1", "--lattice"
        )
        result = payload["result"]
        self.assertTrue(result["passed"])
        self.assertEqual(result["pairs"], 4)
        self.assertLess(result["lattice_rel_err"], 1e-6)
        self.assertEqual(RunRecord.objects.get(command="meansquare check").status, "PASSED")

    def test_without_lattice(self):
        """Test the near-diagonal error is reported without a pass/fail check."""
        payload = self._run("--D", "4", "--X", "2", "--family", "zero")
        self.assertTrue(payload["result"]["passed"])
        self.assertEqual(payload["result"]["rel_err"], 0.0)

    def test_csv_is_rejected(self):
        """Test the check has no CSV form."""
        with self.assertRaises(CommandError) as ctx:
            self._run("--D", "4", "--X", "2", "--format", "csv")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_support_error(self):
        """Test an orbit outside the annulus exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            self._run("--D", "4", "--X", "2", "--family", "orbit", "--xi", "1,0")
        self.assertEqual(ctx.exception.returncode, 2)
