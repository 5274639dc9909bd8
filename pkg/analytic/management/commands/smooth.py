"""
Management command for tables of the smoothing functions.

Each row holds rho(u), the partition defect rho(u) + rho(1/u) - 1, and Omega, W and
Upsilon of the W_eta family at a log-spaced u. The table passes when the partition defect
stays below 1e-12.

Usage:
    python manage.py smooth table
    python manage.py smooth table --b 2 --eta 0.2 --points 400 --format csv
"""

import logging
import math

import numpy as np

from analytic.mellin import mellin_inverse
from analytic.smoothing import DEFAULT_B, DEFAULT_ETA, SmoothingConfig, rho, w_eta_family
from shared.exceptions import DomainError
from shared.management.base import CommandOutcome, LabCommand

logger = logging.getLogger(__name__)

TABLE_FIELDS = ("u", "rho", "partition_defect", "omega", "w", "upsilon")
PARTITION_TOL = 1e-12
# log u runs over [-MARGIN L, MARGIN L] with L the wider of log b and eta
MARGIN = 1.25


def smooth_rows(cfg: SmoothingConfig, points: int) -> list[dict]:
    reach = MARGIN * max(cfg.log_b, cfg.eta)
    u = np.exp(np.linspace(-reach, reach, points))
    family = w_eta_family(cfg)
    rho_u = rho(cfg, u)
    defect = rho_u + rho(cfg, 1.0 / u) - 1.0
    columns = zip(
        u.tolist(),
        rho_u.tolist(),
        defect.tolist(),
        family.omega(u).tolist(),
        family.w(u).tolist(),
        family.upsilon(u).tolist(),
    )
    return [dict(zip(TABLE_FIELDS, values)) for values in columns]


class Command(LabCommand):
    help = "Tabulate rho and the W_eta family on a log-spaced grid"

    actions = ("table",)

    def add_lab_arguments(self, parser, action):
        parser.add_argument(
            "--b",
            type=float,
            default=DEFAULT_B,
            help="Support of rho is [1/b, b] (default: sqrt 2)",
        )
        parser.add_argument(
            "--eta",
            type=float,
            default=DEFAULT_ETA,
            help="Width of the W_eta family (default: log(2)/3)",
        )
        parser.add_argument(
            "--points", type=int, default=200, help="Number of grid points (default: 200)"
        )

    def run(self, action, options):
        if options["points"] < 2:
            raise DomainError("points must be at least 2", points=options["points"])
        cfg = SmoothingConfig(b=options["b"], eta=options["eta"])
        rows = smooth_rows(cfg, options["points"])
        defect = max(abs(row["partition_defect"]) for row in rows)
        passed = defect <= PARTITION_TOL
        if not passed:
            logger.warning("rho(u) + rho(1/u) differs from 1 by %.3e", defect)
        mellin_err = abs(mellin_inverse(cfg, 1.0) - 0.5)
        logger.info(
            "Smoothing table b=%g eta=%g: %d points, partition defect %.2e",
            cfg.b,
            cfg.eta,
            len(rows),
            defect,
        )
        return CommandOutcome(
            result={
                "smoothing": cfg.as_record(),
                "rows": rows,
                "partition_defect": defect,
                "mellin_rho_one_err": mellin_err,
                "support": [1.0 / cfg.b, cfg.b],
                "eta_support": [1.0, math.exp(cfg.eta)],
                "passed": passed,
            },
            rows=rows,
            schema="smooth-table",
            fieldnames=TABLE_FIELDS,
            passed=passed,
            summary={"points": len(rows), "partition_defect": defect},
        )
