"""
Consistency diagnostics for the approximate functional equation.

Nothing here asserts the (non-effective) constants of the underlying estimates; every check
returns the measured quantity and, where a bound is involved, the ratio against it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from django.conf import settings

import numpy as np

from analytic.conductor import conductor, gamma_factor
from analytic.quadrature import simpson_weights
from analytic.smoothing import rho
from hecke.coefficients import coefficients_upto
from shared.exceptions import DomainError, HypothesisError
from zeta.afe import afe_eval, check_strip
from zeta.config import AfeConfig
from zeta.oracle import zeta_d0_oracle

logger = logging.getLogger(__name__)


def fe_residual(d: int, s: complex, cfg: Optional[AfeConfig] = None) -> float:
    """
    |Z(d, s) - X_d(s) Z(-d, 1 - s)| / (1 + |Z(d, s)|) with Z = afe_eval.

    Raises:
        StripError: s or 1 - s outside the strip
    """
    s = complex(s)
    check_strip(s)
    check_strip(1.0 - s)
    cfg = cfg or AfeConfig.from_settings()
    direct = afe_eval(d, s, cfg).value
    reflected = gamma_factor(d, s) * afe_eval(-d, 1.0 - s, cfg).value
    residual = abs(direct - reflected) / (1.0 + abs(direct))
    logger.debug("Functional equation residual d=%d s=%s: %.3e", d, s, residual)
    return float(residual)


@dataclass(frozen=True)
class ReferenceBounds:
    T: float
    epsilon: float
    convexity_exponent: float
    subconvexity_exponent: float

    @property
    def convexity(self) -> float:
        return self.T**self.convexity_exponent

    @property
    def subconvexity(self) -> float:
        return self.T**self.subconvexity_exponent

    def as_record(self) -> dict:
        return {
            "T": self.T,
            "epsilon": self.epsilon,
            "convexity": self.convexity,
            "convexity_exponent": self.convexity_exponent,
            "subconvexity": self.subconvexity,
            "subconvexity_exponent": self.subconvexity_exponent,
        }


def reference_bounds(
    d: int, s: complex, T: Optional[float] = None, epsilon: Optional[float] = None
) -> ReferenceBounds:
    """
    Convexity envelope T^max(0, (1 - sigma)/2 + eps, 1/2 - sigma) and the subconvex
    envelope T^(1/6 + eps). Reporting only.
    """
    s = complex(s)
    check_strip(s)
    if epsilon is None:
        epsilon = settings.HECKE_LAB["EPSILON_REFERENCE"]
    if T is None:
        T = conductor(d, s.imag)
    sigma = s.real
    convex = max(0.0, (1.0 - sigma) / 2.0 + epsilon, 0.5 - sigma)
    return ReferenceBounds(
        T=float(T),
        epsilon=epsilon,
        convexity_exponent=convex,
        subconvexity_exponent=1.0 / 6.0 + epsilon,
    )


@dataclass(frozen=True)
class MajorantCheck:
    d: int
    t: float
    h: int
    eta: float
    T_star: float
    lhs: float
    rhs_integral: float

    @property
    def ratio(self) -> float:
        if self.rhs_integral <= 0.0:
            return math.inf
        return self.lhs / self.rhs_integral

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "h": self.h,
            "eta": self.eta,
            "T_star": self.T_star,
            "lhs": self.lhs,
            "rhs_integral": self.rhs_integral,
            "ratio": self.ratio,
        }


def critical_line_majorant(
    d: int,
    t: float,
    h: int,
    cfg: Optional[AfeConfig] = None,
    eta: Optional[float] = None,
    T_star: Optional[float] = None,
    intervals: int = 64,
) -> MajorantCheck:
    """
    Compare |zeta(1/2 + it, lambda^d)|^h with the smoothed single-sum majorant

        (3^h / eta) int_{-2 eta}^{2 eta} |sum_n rho(n e^-theta T*^-1/2) delta(n) n^(-1/2-it)|^h

    integrated by Simpson's rule.

    Args:
        d: Character index
        t: Height on the critical line
        h: Power, h >= 1
        cfg: AFE parameters for the left side
        eta: Window half-width (defaults to the smoothing eta)
        T_star: Reference scale; defaults to |2d + it|^2 / pi^2
        intervals: Simpson intervals (even)

    Raises:
        DomainError: h < 1 or eta outside (0, 1]
        HypothesisError: e^-eta T* <= |2d + it|^2 / pi^2 <= e^eta T* fails
    """
    if h < 1:
        raise DomainError("The majorant needs h >= 1", h=h)
    cfg = cfg or AfeConfig.from_settings()
    eta = cfg.smoothing.eta if eta is None else float(eta)
    if not 0.0 < eta <= 1.0:
        raise DomainError("eta must lie in (0, 1]", eta=eta)

    scale = abs(complex(2 * d, t)) ** 2 / math.pi**2
    if T_star is None:
        T_star = scale
    if not math.exp(-eta) * T_star <= scale <= math.exp(eta) * T_star:
        raise HypothesisError(
            "|2d + it|^2 / pi^2 must lie within e^(+-eta) of T*", d=d, t=t, T_star=T_star
        )

    s = complex(0.5, t)
    lhs = abs(afe_eval(d, s, cfg).value) ** h

    root = math.sqrt(T_star)
    n_max = int(math.floor(cfg.smoothing.b * math.exp(2.0 * eta) * root))
    theta = np.linspace(-2.0 * eta, 2.0 * eta, intervals + 1)
    if n_max < 1:
        rhs = 0.0
    else:
        delta = coefficients_upto(d, n_max, cfg.coeff_cap)[1 : n_max + 1]
        n = np.arange(1, n_max + 1, dtype=np.float64)
        terms = delta * np.exp(-s * np.log(n))
        weights = rho(cfg.smoothing, np.outer(np.exp(-theta), n / root))
        sums = np.abs(weights @ terms) ** h
        step = 4.0 * eta / intervals
        rhs = 3.0**h / eta * float(simpson_weights(intervals, step) @ sums)

    check = MajorantCheck(
        d=d, t=float(t), h=h, eta=eta, T_star=float(T_star), lhs=float(lhs), rhs_integral=rhs
    )
    logger.info(
        "Critical-line majorant d=%d t=%g h=%d: lhs=%.4g rhs=%.4g ratio=%.4g",
        d,
        t,
        h,
        check.lhs,
        check.rhs_integral,
        check.ratio,
    )
    return check


def k_convergence(
    d: int,
    s: complex,
    orders=(0, 1, 2, 4),
    kernel: str = "taylor",
    noise_floor: float = 1e-10,
) -> dict:
    """
    Discrepancy of the K-th order evaluation against a reference, for each K in orders.

    The reference is the d = 0 oracle, or the exact kernel when d != 0. monotone reports
    whether the discrepancy is non-increasing in K up to noise_floor.
    """
    s = complex(s)
    if d == 0:
        reference = zeta_d0_oracle(s)
    else:
        reference = afe_eval(d, s, AfeConfig.from_settings(kernel="mellin")).value
    rows = []
    for K in orders:
        value = afe_eval(d, s, AfeConfig.from_settings(kernel=kernel, K=K)).value
        rows.append({"K": K, "value": value, "abs_err": abs(value - reference)})
    errors = [row["abs_err"] for row in rows]
    monotone = all(b <= a + noise_floor for a, b in zip(errors, errors[1:]))
    logger.debug("K-convergence d=%d s=%s (%s): %s", d, s, kernel, errors)
    return {
        "d": d,
        "s": s,
        "kernel": kernel,
        "reference": reference,
        "rows": rows,
        "monotone": monotone,
    }
