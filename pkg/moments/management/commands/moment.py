"""
Management command for the weighted fourth moment E(D; M, A).

Actions:
- run: one experiment, from options or a JSON configuration file
- report: one experiment per D and the table of envelope ratios

Usage:
    python manage.py moment run --D 8 --M 4 --family unit
    python manage.py moment run --config experiments/d12.json --threads 8 --out d12.json
    python manage.py moment report --D 4,6,8,10,12 --format csv
"""

import logging

from django.conf import settings
from django.core.management.base import CommandError

from hecke.coeff_maps import FAMILIES
from moments.envelopes import REPORT_FIELDS, envelope_rows
from moments.experiment import MOMENT_FIELDS
from moments.services import MomentService
from shared.exceptions import EXIT_USAGE
from shared.management.base import CommandOutcome, LabCommand
from shared.validators import parse_float_list, validate_positive
from zeta.config import KERNELS

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Compute the weighted fourth moment E(D; M, A) and its envelope ratios"

    actions = ("run", "report")

    def add_lab_arguments(self, parser, action):
        if action == "run":
            parser.add_argument("--D", type=float, default=None, help="Range of d and t")
            parser.add_argument(
                "--config", default=None, help="JSON experiment file; options override it"
            )
            parser.add_argument(
                "--mirror",
                action="store_true",
                help="Compute d >= 0 only and mirror (A real or conjugation invariant)",
            )
            parser.add_argument("--theta", type=float, default=None, help="Spectral exponent")
            parser.add_argument(
                "--epsilon", type=float, default=None, help="Envelope exponent slack"
            )
            parser.add_argument(
                "--kernel", choices=KERNELS, default=None, help="AFE second-sum kernel"
            )
        else:
            parser.add_argument("--D", required=True, help="Comma-separated D values")
        parser.add_argument("--M", type=float, default=None, help="Length of P_M (default: 1)")
        parser.add_argument(
            "--family",
            choices=FAMILIES,
            default=None,
            help="Coefficient family on 0 < N(mu) <= M (default: unit)",
        )
        parser.add_argument(
            "--step", type=float, default=None, help="Upper bound on the Simpson step"
        )

    def run(self, action, options):
        if action == "report":
            return self._report(options)
        return self._run(options)

    def _experiment(self, options):
        if options["config"]:
            data = MomentService.load_config(options["config"])
        elif options["D"] is None:
            raise CommandError(
                "validation_error: --D is required unless --config is given",
                returncode=EXIT_USAGE,
            )
        else:
            data = {}
        if options["family"] is not None:
            M = options["M"] if options["M"] is not None else data.get("M", 1.0)
            validate_positive(M, "M")
            data = {**data, "A": {"norm_bound": max(1, int(M)), "family": options["family"]}}
        if options["kernel"] is not None:
            data = {**data, "afe": {**data.get("afe", {}), "kernel": options["kernel"]}}
        return MomentService.experiment_from_config(
            data,
            seed=options["seed"],
            D=options["D"],
            M=options["M"],
            step=options["step"],
            theta=options["theta"],
            epsilon=options["epsilon"],
            mirror=options["mirror"] or None,
        )

    def _run(self, options):
        experiment = self._experiment(options)
        result = MomentService.run_moment(experiment, threads=options["threads"])
        row = envelope_rows([result], settings.HECKE_LAB["WATERMARK"])[0]
        record = result.as_record()
        record["flagged"] = row["flagged"]
        if not result.converged:
            self.stderr.write(self.style.WARNING("Quadrature not converged under step halving"))
        return CommandOutcome(
            result=record,
            rows=[result.as_row()],
            schema="moment",
            fieldnames=MOMENT_FIELDS,
            passed=result.symmetric is not False,
            summary={
                "E": result.E,
                "error_bar": result.error_bar,
                "converged": result.converged,
                "ratio_sarnak": result.ratios["sarnak"],
            },
        )

    def _report(self, options):
        D_values = parse_float_list(options["D"])
        _, report = MomentService.report(
            D_values,
            M=options["M"] or 1.0,
            family=options["family"] or "unit",
            seed=options["seed"],
            threads=options["threads"],
            step=options["step"],
        )
        if report.flagged:
            self.stderr.write(
                self.style.WARNING(f"{report.flagged} rows exceed the watermark {report.watermark}")
            )
        return CommandOutcome(
            result=report.as_record(),
            rows=report.rows,
            schema="envelope-report",
            fieldnames=REPORT_FIELDS,
            summary={"rows": len(report.rows), "slope": report.slope, "flagged": report.flagged},
        )
