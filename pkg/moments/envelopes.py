"""
Envelopes for the fourth moment and the report comparing computed moments with them.

The mean-value theorem bounds E(D; M, A) up to an unknown constant by

    (D^(2+eps) + (1 + D M^(-3/2))^theta D^(1+eps) M^2) ||A||_2^2

and by

    D^(2+eps) ||A||_2^2 + (1 + D M^(-2))^theta D^(1+eps) M^3 ||A||_inf^2;

the pure fourth moment is of size D^2 log^4 D. A ratio far above 1 therefore points to an
implementation error rather than a failure of the bounds.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from django.conf import settings
from django.core.exceptions import ValidationError

import numpy as np

from moments.experiment import MOMENT_FIELDS

logger = logging.getLogger(__name__)

REPORT_FIELDS = MOMENT_FIELDS + ("flagged",)


def envelope_l2(D: float, M: float, l2_squared: float, epsilon: float, theta: float) -> float:
    return (
        D ** (2.0 + epsilon) + (1.0 + D * M**-1.5) ** theta * D ** (1.0 + epsilon) * M**2
    ) * l2_squared


def envelope_sup(
    D: float, M: float, l2_squared: float, sup_squared: float, epsilon: float, theta: float
) -> float:
    return (
        D ** (2.0 + epsilon) * l2_squared
        + (1.0 + D * M**-2) ** theta * D ** (1.0 + epsilon) * M**3 * sup_squared
    )


def envelope_sarnak(D: float) -> float:
    return D * D * math.log(D + 2.0) ** 4


def ratio(value: float, envelope: float) -> float:
    """value / envelope, with 0 / 0 read as 0."""
    if value == 0:
        return 0.0
    return value / envelope


def envelopes(D, M, l2_squared, sup_squared, epsilon, theta) -> dict:
    return {
        "thm1_14": envelope_l2(D, M, l2_squared, epsilon, theta),
        "thm1_15": envelope_sup(D, M, l2_squared, sup_squared, epsilon, theta),
        "sarnak": envelope_sarnak(D),
    }


def fit_log_slope(D_values, E_values) -> Optional[float]:
    """
    Least-squares slope of log E against log D.

    Returns None when fewer than two distinct D carry E > 0.

    Raises:
        ValidationError: fewer than two distinct D, or D and E of different lengths
    """
    D_values, E_values = list(D_values), list(E_values)
    if len(D_values) != len(E_values):
        raise ValidationError("The slope fit needs one E per D")
    if len(set(D_values)) < 2:
        raise ValidationError("The slope fit needs at least two distinct D values")
    points = [(d, e) for d, e in zip(D_values, E_values) if e > 0]
    if len({d for d, _ in points}) < 2:
        return None
    x = np.log([d for d, _ in points])
    y = np.log([e for _, e in points])
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class EnvelopeReport:
    rows: list[dict]
    slope: Optional[float]
    watermark: float

    @property
    def flagged(self) -> int:
        return sum(1 for row in self.rows if row["flagged"])

    def as_record(self) -> dict:
        return {
            "rows": self.rows,
            "slope": self.slope,
            "watermark": self.watermark,
            "flagged": self.flagged,
        }


def envelope_rows(results, watermark: float) -> list[dict]:
    """
    One row per MomentResult with its three ratios.

    Rows whose ratio exceeds the watermark are flagged and logged at WARNING.
    """
    rows = []
    for result in results:
        row = result.as_row()
        row["flagged"] = any(value > watermark for value in result.ratios.values())
        if row["flagged"]:
            logger.warning(
                "Moment at D=%g M=%g exceeds the watermark %g: ratios %s",
                row["D"],
                row["M"],
                watermark,
                result.ratios,
            )
        else:
            logger.info("Moment at D=%g M=%g: ratios %s", row["D"], row["M"], result.ratios)
        rows.append(row)
    return rows


def envelope_report(results, watermark: Optional[float] = None) -> EnvelopeReport:
    """
    Envelope rows for a sweep over D plus the log-log slope of E.

    The watermark defaults to HECKE_LAB["WATERMARK"].

    Raises:
        ValidationError: fewer than two distinct D among the results
    """
    results = list(results)
    if len({result.D for result in results}) < 2:
        raise ValidationError("An envelope report needs results for at least two distinct D")
    watermark = settings.HECKE_LAB["WATERMARK"] if watermark is None else watermark
    rows = envelope_rows(results, watermark)
    slope = fit_log_slope([row["D"] for row in rows], [row["E"] for row in rows])
    if slope is not None:
        logger.info("log E / log D slope over %d rows: %.4f", len(rows), slope)
    return EnvelopeReport(rows=rows, slope=slope, watermark=watermark)
