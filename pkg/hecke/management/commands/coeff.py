"""
Management command for tables of the Dirichlet coefficients delta(Lambda^d, n).

Usage:
    python manage.py coeff table --d 0 --n 100
    python manage.py coeff table --d 3 --n 100000 --format csv --out delta3.csv
    python manage.py coeff table --d 2 --n 2000 --check
"""

import logging

import numpy as np

from hecke.coefficients import coeff_table, delta_coeff_lattice
from shared.exceptions import DomainError
from shared.management.base import CommandOutcome, LabCommand

logger = logging.getLogger(__name__)

TABLE_FIELDS = ("n", "delta")
# Lattice scans beyond this length are left out of --check
CHECK_LIMIT = 10_000
CHECK_TOL = 1e-12


class Command(LabCommand):
    help = "Tabulate delta(Lambda^d, n) for 1 <= n <= N"

    actions = ("table",)

    def add_lab_arguments(self, parser, action):
        parser.add_argument("--d", type=int, required=True, help="Character index")
        parser.add_argument("--n", type=int, required=True, help="Table length N")
        parser.add_argument(
            "--check",
            action="store_true",
            help=f"Compare with a lattice-point scan for n <= {CHECK_LIMIT}",
        )

    def run(self, action, options):
        d, n = options["d"], options["n"]
        if n < 1:
            raise DomainError("table length must be at least 1", n=n)
        table = coeff_table(d, n)
        values = table.values[1:]
        result = {
            "d": d,
            "n": n,
            "values": table.as_list(),
            "sum": float(np.sum(values)),
            "max_abs": float(np.max(np.abs(values))),
        }
        passed = True
        if options["check"]:
            scanned = min(n, CHECK_LIMIT)
            lattice = np.array([delta_coeff_lattice(d, k) for k in range(1, scanned + 1)])
            max_err = float(np.max(np.abs(values[:scanned] - lattice)))
            passed = max_err <= CHECK_TOL
            result.update(checked=scanned, max_err=max_err, passed=passed)
            if not passed:
                logger.warning(
                    "delta(Lambda^%d, n) differs from the lattice scan by %.3e", d, max_err
                )
        logger.info("Coefficient table d=%d n<=%d", d, n)
        return CommandOutcome(
            result=result,
            rows=table.as_rows(),
            schema="coeff-table",
            fieldnames=TABLE_FIELDS,
            passed=passed,
            summary={"d": d, "n": n, "max_abs": result["max_abs"]},
        )
