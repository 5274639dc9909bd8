"""
Management command for the Poisson summation identities over Z[i].

Without case options the shipped parameter matrix is run (all variants, or the one named
by --variant). With --sigma0, --tau, --alpha or --gamma a single case is checked.

Usage:
    python manage.py poisson verify
    python manage.py poisson verify --variant twist
    python manage.py poisson verify --variant plain --sigma0 1.0 --tau 0.25,-0.5
    python manage.py poisson verify --variant progression --alpha 1,1 --gamma 2,1
    python manage.py poisson verify --variant plain --test bump --radius 2.5 --tau 0.1,-0.05
"""

import logging

from django.core.management.base import CommandError

from kloosterman.poisson import (
    DEFAULT_TOLERANCE,
    TEST_FUNCTIONS,
    TRANSFORMS,
    VARIANTS,
    case_from_options,
    poisson_verify,
    verify_matrix,
)
from shared.exceptions import EXIT_USAGE
from shared.management.base import CommandOutcome, LabCommand
from shared.validators import parse_float_pair, parse_gauss_pair

logger = logging.getLogger(__name__)

_CASE_OPTIONS = ("sigma0", "tau", "alpha", "gamma", "test", "radius", "transform")


class Command(LabCommand):
    help = "Check the Poisson summation identities over Z[i] numerically"

    actions = ("verify",)

    def add_lab_arguments(self, parser, action):
        parser.add_argument(
            "--variant",
            choices=VARIANTS + ("all",),
            default="all",
            help="Identity to check (default: all)",
        )
        parser.add_argument("--sigma0", type=float, default=None, help="Gaussian scale")
        parser.add_argument("--tau", default=None, help="Frequency shift as re,im (plain)")
        parser.add_argument("--alpha", default=None, help="alpha as re,im")
        parser.add_argument("--gamma", default=None, help="Modulus as re,im")
        parser.add_argument(
            "--test", choices=TEST_FUNCTIONS, default=None, help="Test function (default: gaussian)"
        )
        parser.add_argument("--radius", type=float, default=None, help="Support radius of the bump")
        parser.add_argument(
            "--transform",
            choices=TRANSFORMS,
            default=None,
            help="Closed-form or numerical f^ (default: closed for gaussian, numeric for bump)",
        )
        parser.add_argument(
            "--tol",
            type=float,
            default=DEFAULT_TOLERANCE,
            help="Largest accepted |lhs - rhs| (default: %(default)s)",
        )

    def run(self, action, options):
        variant = None if options["variant"] == "all" else options["variant"]
        if any(options[name] is not None for name in _CASE_OPTIONS):
            if variant is None:
                raise CommandError(
                    "validation_error: a single case needs --variant", returncode=EXIT_USAGE
                )
            tau = complex(*parse_float_pair(options["tau"])) if options["tau"] else 0j
            case = case_from_options(
                variant,
                1.0 if options["sigma0"] is None else options["sigma0"],
                tau,
                parse_gauss_pair(options["alpha"]) if options["alpha"] else (0, 0),
                parse_gauss_pair(options["gamma"]) if options["gamma"] else (1, 0),
                test=options["test"] or "gaussian",
                radius=2.5 if options["radius"] is None else options["radius"],
                transform=options["transform"],
            )
            checks = [poisson_verify(case, tolerance=options["tol"])]
        else:
            checks = verify_matrix(variant=variant, tolerance=options["tol"])

        records = [check.as_record() for check in checks]
        passed = all(check.passed for check in checks)
        worst = max(check.abs_err for check in checks)
        logger.info("Poisson verify: %d cases, worst |lhs - rhs| = %.3e", len(checks), worst)
        return CommandOutcome(
            result={"cases": records, "passed": passed, "max_abs_err": worst},
            passed=passed,
            summary={"cases": len(records), "max_abs_err": worst},
        )
