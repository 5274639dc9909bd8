"""
Calibration Service for the AFE error constant.

The error estimate of the Taylor kernel has the shape
C T^(1/6 + eps) x^(1/2 - sigma) ((|t|/T)^alpha_K + T^-beta_K) with an unknown constant C.
The service fits C against the d = 0 oracle: C is the largest observed ratio of the true
error to the shape with C = 1. The frozen HECKE_LAB["AFE_ERROR_CONSTANT"] covers the grid when it
is at least the fitted value.
"""

import logging
from dataclasses import dataclass, field

from django.conf import settings

import numpy as np

from shared.parallel import ordered_map
from zeta.afe import afe_eval
from zeta.config import AfeConfig
from zeta.oracle import zeta_d0_oracle

logger = logging.getLogger(__name__)

DEFAULT_HEIGHTS = tuple(float(t) for t in np.linspace(10.0, 48.0, 20))
DEFAULT_SIGMAS = (0.4, 0.6)


@dataclass
class CalibrationResult:
    """Fitted constant plus the per-point ratios it was taken from."""

    K: int
    constant: float
    frozen: float
    points: list[dict] = field(default_factory=list)

    @property
    def covered(self) -> bool:
        """True when the frozen constant bounds every observed error on the grid."""
        return self.frozen >= self.constant

    def as_record(self) -> dict:
        return {
            "K": self.K,
            "error_constant": self.constant,
            "frozen_constant": self.frozen,
            "covered": self.covered,
            "points": self.points,
        }


def _calibration_point(job):
    sigma, t, K = job
    s = complex(sigma, t)
    cfg = AfeConfig.from_settings(kernel="taylor", K=K, error_constant=1.0)
    value = afe_eval(0, s, cfg)
    error = abs(value.value - zeta_d0_oracle(s))
    return {
        "sigma": sigma,
        "t": t,
        "abs_err": error,
        "shape": value.err_estimate,
        "ratio": error / value.err_estimate,
    }


class CalibrationService:
    """
    Service for fitting the AFE error constant.

    Usage:
        result = CalibrationService.calibrate(K=4, threads=2)
        result.constant  # value for HECKE_LAB_AFE_ERROR_CONSTANT
    """

    @staticmethod
    def grid(heights=DEFAULT_HEIGHTS, sigmas=DEFAULT_SIGMAS) -> list[tuple[float, float]]:
        """(sigma, t) points, sigma-major."""
        return [(sigma, t) for sigma in sigmas for t in heights]

    @staticmethod
    def calibrate(K: int = 4, threads=None, grid=None) -> CalibrationResult:
        """
        Fit the error constant on grid (40 points by default).

        Args:
            K: Expansion order of the Taylor kernel
            threads: Worker count
            grid: Optional list of (sigma, t)

        Returns:
            CalibrationResult
        """
        grid = grid or CalibrationService.grid()
        points = ordered_map(
            _calibration_point, [(sigma, t, K) for sigma, t in grid], threads=threads
        )
        constant = max(point["ratio"] for point in points)
        frozen = settings.HECKE_LAB["AFE_ERROR_CONSTANT"]
        logger.info(
            "Fitted AFE error constant for K=%d on %d points: %.6g", K, len(points), constant
        )
        if constant > frozen:
            logger.warning(
                "Fitted AFE error constant %.6g exceeds the frozen value %.6g", constant, frozen
            )
        return CalibrationResult(K=K, constant=float(constant), frozen=frozen, points=points)
