"""
Management command for zeta(s, lambda^d).

Actions:
- eval: evaluate by the approximate functional equation (d = 0 also reports the oracle)
- fe-check: residual of the functional equation between s and 1 - s
- calibrate: fit the error constant of the Taylor kernel against the d = 0 oracle

Usage:
    python manage.py zeta eval --d 0 --t 30 --sigma 0.5
    python manage.py zeta eval --d 8 --t 10 --split 20,0.5 --kernel taylor --K 2
    python manage.py zeta fe-check --d 3 --t 25 --sigma 0.4
    python manage.py zeta calibrate --K 4 --threads 4
"""

import logging

from django.core.exceptions import ValidationError

from shared.management.base import CommandOutcome, LabCommand
from shared.validators import parse_float_pair
from zeta.afe import afe_eval, default_config
from zeta.config import KERNELS
from zeta.diagnostics import fe_residual, reference_bounds
from zeta.oracle import zeta_d0_oracle
from zeta.services import CalibrationService

logger = logging.getLogger(__name__)

EVAL_FIELDS = (
    "d",
    "s_re",
    "s_im",
    "K",
    "kernel",
    "value_re",
    "value_im",
    "err_estimate",
    "T",
    "x",
    "y",
)


class Command(LabCommand):
    help = "Evaluate zeta(s, lambda^d) and check its functional equation"

    actions = ("eval", "fe-check", "calibrate")

    def add_lab_arguments(self, parser, action):
        if action == "calibrate":
            parser.add_argument(
                "--K", type=int, default=4, help="Expansion order of the Taylor kernel (default: 4)"
            )
            return
        parser.add_argument(
            "--K",
            type=int,
            default=None,
            help="Expansion order of the Taylor kernel (default: 4; not accepted by mellin)",
        )
        parser.add_argument(
            "--kernel",
            choices=KERNELS,
            default=None,
            help="Second-sum kernel (default: HECKE_LAB_AFE_KERNEL)",
        )
        parser.add_argument(
            "--b", type=float, default=None, help="Smoothing width b (default: sqrt 2)"
        )
        parser.add_argument("--d", type=int, required=True, help="Character index")
        parser.add_argument("--t", type=float, required=True, help="Imaginary part of s")
        parser.add_argument(
            "--sigma", type=float, default=0.5, help="Real part of s (default: 0.5)"
        )
        if action == "eval":
            parser.add_argument(
                "--split",
                default=None,
                help="Explicit split x,y with x * y = T (default: balanced)",
            )
        else:
            parser.add_argument(
                "--tol", type=float, default=0.05, help="Residual tolerance (default: 0.05)"
            )

    def run(self, action, options):
        if action == "calibrate":
            return self._calibrate(options)
        cfg = default_config(kernel=options["kernel"], K=options["K"], b=options["b"])
        if options["K"] is not None and cfg.effective_K is None:
            raise ValidationError(
                f"--K applies to the taylor kernel only; the {cfg.kernel} kernel is exact"
            )
        s = complex(options["sigma"], options["t"])
        if action == "eval":
            return self._eval(options["d"], s, cfg, options["split"])
        return self._fe_check(options["d"], s, cfg, options["tol"])

    def _eval(self, d, s, cfg, split):
        if split is not None:
            cfg = cfg.with_split(*parse_float_pair(split))
        value = afe_eval(d, s, cfg)
        record = value.as_record()
        record["reference_bounds"] = reference_bounds(d, s).as_record()
        if d == 0:
            oracle = zeta_d0_oracle(s)
            record["oracle_re"] = oracle.real
            record["oracle_im"] = oracle.imag
            record["oracle_rel_err"] = abs(value.value - oracle) / max(abs(oracle), 1e-300)
        logger.info("zeta eval d=%d s=%s -> %s", d, s, value.value)
        row = {key: record[key] for key in EVAL_FIELDS}
        return CommandOutcome(
            result=record,
            rows=[row],
            schema="zeta-eval",
            fieldnames=EVAL_FIELDS,
            summary={"value_re": value.value.real, "value_im": value.value.imag},
        )

    def _fe_check(self, d, s, cfg, tol):
        residual = fe_residual(d, s, cfg)
        passed = residual <= tol
        if not passed:
            logger.warning("Functional equation residual %.3e exceeds %.3e", residual, tol)
        result = {
            "d": d,
            "s_re": s.real,
            "s_im": s.imag,
            "residual": residual,
            "tolerance": tol,
            "passed": passed,
        }
        return CommandOutcome(result=result, passed=passed, summary={"residual": residual})

    def _calibrate(self, options):
        fit = CalibrationService.calibrate(K=options["K"], threads=options["threads"])
        style = self.style.SUCCESS if fit.covered else self.style.WARNING
        self.stderr.write(
            style(
                f"Fitted {fit.constant:.6g} against HECKE_LAB_AFE_ERROR_CONSTANT={fit.frozen:.6g}"
            )
        )
        return CommandOutcome(
            result=fit.as_record(),
            rows=fit.points,
            schema="afe-calibration",
            fieldnames=("sigma", "t", "abs_err", "shape", "ratio"),
            passed=fit.covered,
            summary={"K": fit.K, "error_constant": fit.constant, "frozen_constant": fit.frozen},
        )
