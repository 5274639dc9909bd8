"""
Management command for the invariant suite.

Runs every check in a fixed order and prints a pass/fail line per check with its declared
tolerance; exits with code 1 when any check fails.

Usage:
    python manage.py verify all --seed 7
    python manage.py verify all --seed 7 --groups coefficients,gamma --format csv
    python manage.py verify all --seed 7 --threads 4 --moment-D 4,6,8,10,12
"""

import logging

from django.core.management.base import CommandError

from shared.exceptions import EXIT_USAGE
from shared.management.base import CommandOutcome, LabCommand
from shared.services.verification_service import GROUPS, VERIFY_FIELDS, VerificationService
from shared.validators import parse_float_list

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Run the invariant suite and report each check against its tolerance"

    actions = ("all",)

    def add_lab_arguments(self, parser, action):
        parser.add_argument(
            "--groups",
            default=None,
            help=f"Comma-separated subset of {', '.join(GROUPS)} (default: all)",
        )
        parser.add_argument(
            "--moment-D",
            dest="moment_D",
            default=None,
            help="Comma-separated D values for the moment scaling checks (default: skipped)",
        )

    def run(self, action, options):
        groups = None
        if options["groups"]:
            groups = tuple(name.strip() for name in options["groups"].split(","))
            unknown = sorted(set(groups) - set(GROUPS))
            if unknown:
                raise CommandError(
                    f"validation_error: unknown check groups: {', '.join(unknown)}",
                    returncode=EXIT_USAGE,
                )
        moment_D = parse_float_list(options["moment_D"]) if options["moment_D"] else None

        report = VerificationService.run_all(
            seed=options["seed"], threads=options["threads"], groups=groups, moment_D=moment_D
        )
        for check in report.checks:
            style = self.style.SUCCESS if check.passed else self.style.ERROR
            self.stderr.write(
                style(
                    f"{'PASS' if check.passed else 'FAIL'} {check.name}: "
                    f"{check.value:.3e} (tolerance {check.tolerance:.1e})"
                )
            )
        return CommandOutcome(
            result=report.as_record(),
            rows=report.rows,
            schema="verify",
            fieldnames=VERIFY_FIELDS,
            passed=report.passed,
            summary={"checks": len(report.checks), "failures": report.failures},
        )
