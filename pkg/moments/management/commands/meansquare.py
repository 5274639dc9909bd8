"""
Management command for the smoothed mean-square identity of Dirichlet polynomials.

The direct side E is compared with the near-diagonal sum over |xi1 - xi2| < QX (or its
smooth-cutoff variant). The near-diagonal error is reported only; with --lattice the
complete lattice form, which equals E exactly, is checked against --tol.

Usage:
    python manage.py meansquare check --D 8 --X 8 --Q 0.5 --family random-sign --seed 7
    python manage.py meansquare check --D 8 --X 3 --family orbit --xi 3,1 --lattice
    python manage.py meansquare check --D 16 --X 4 --cutoff smooth --delta 0.05
"""

import logging

from moments.mean_square import (
    ANNULUS_FAMILIES,
    CUTOFFS,
    DEFAULT_DELTA,
    build_annulus_map,
    smoothed_mean_square,
)
from shared.management.base import CommandOutcome, LabCommand
from shared.validators import parse_gauss_pair

logger = logging.getLogger(__name__)

LATTICE_TOL = 1e-6


class Command(LabCommand):
    help = "Check the smoothed mean-square identity on an annulus"

    actions = ("check",)

    def add_lab_arguments(self, parser, action):
        parser.add_argument("--D", type=float, required=True, help="Scale of d and t")
        parser.add_argument("--X", type=float, required=True, help="Annulus radius")
        parser.add_argument(
            "--Q", type=float, default=0.5, help="Near-diagonal factor in (0, 1/2] (default: 0.5)"
        )
        parser.add_argument(
            "--family",
            choices=ANNULUS_FAMILIES,
            default="random-sign",
            help="Coefficients on the annulus (default: random-sign)",
        )
        parser.add_argument(
            "--xi", default=None, help="Orbit representative for --family orbit, as re,im"
        )
        parser.add_argument(
            "--cutoff",
            choices=CUTOFFS,
            default="sharp",
            help="Near-diagonal cutoff (default: sharp)",
        )
        parser.add_argument(
            "--delta",
            type=float,
            default=DEFAULT_DELTA,
            help="Smooth cutoff width in (0, 1/(4e)] (default: 1/(4e))",
        )
        parser.add_argument(
            "--lattice", action="store_true", help="Also compute the complete lattice form"
        )
        parser.add_argument(
            "--tol",
            type=float,
            default=LATTICE_TOL,
            help="Tolerance for the lattice form (default: 1e-6)",
        )

    def run(self, action, options):
        xi0 = parse_gauss_pair(options["xi"]) if options["xi"] is not None else None
        coeffs = build_annulus_map(options["family"], options["X"], seed=options["seed"], xi0=xi0)
        result = smoothed_mean_square(
            options["D"],
            coeffs,
            options["X"],
            Q=options["Q"],
            cutoff=options["cutoff"],
            delta=options["delta"],
            lattice=options["lattice"],
        )
        record = result.as_record()
        passed = True
        if result.lattice is not None:
            passed = result.lattice_rel_err <= options["tol"]
            record["tolerance"] = options["tol"]
            if not passed:
                logger.warning(
                    "Lattice form differs from the direct side: relErr %.3e > %.3e",
                    result.lattice_rel_err,
                    options["tol"],
                )
        record["passed"] = passed
        return CommandOutcome(
            result=record,
            passed=passed,
            summary={
                "lhs": result.lhs,
                "rel_err": result.rel_err,
                "lattice_rel_err": result.lattice_rel_err,
            },
        )
