"""
Taylor coefficients of the normalised gamma-factor ratio

    G_d(s, tau) = X_d(s - tau) / X_d(s) * T^(-tau) - 1 = sum_{k>=1} a_k tau^k,

taken by Cauchy's formula on a circle inside the disc of analyticity.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from analytic.conductor import conductor, log_gamma_factor
from analytic.gamma import DEFAULT_ENGINE, GammaEngine
from shared.constants import EXPANSION_SIGMA_MAX, EXPANSION_SIGMA_MIN
from shared.exceptions import HypothesisError

logger = logging.getLogger(__name__)

CAUCHY_NODES = 128


@dataclass(frozen=True)
class AfeCoefficients:
    """a_1..a_K at one (d, s), with the conductor and the analyticity radius used."""

    d: int
    s: complex
    conductor: float
    radius: float
    contour_radius: float
    a: np.ndarray

    @property
    def K(self) -> int:
        return len(self.a)

    def __getitem__(self, k: int) -> complex:
        """a_k, 1-based."""
        if not 1 <= k <= len(self.a):
            raise IndexError(f"a_{k} not computed (K = {len(self.a)})")
        return complex(self.a[k - 1])

    def expansion(self, tau) -> complex:
        """sum_{k<=K} a_k tau^k."""
        tau = np.asarray(tau, dtype=np.complex128)
        powers = np.power.outer(tau, np.arange(1, len(self.a) + 1))
        value = powers @ self.a
        return complex(value) if np.ndim(value) == 0 else value

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "s_re": self.s.real,
            "s_im": self.s.imag,
            "T": self.conductor,
            "radius": self.radius,
            "a": [{"k": k, "re": c.real, "im": c.imag} for k, c in enumerate(self.a, start=1)],
        }


def analyticity_radius(d: int, s: complex) -> float:
    """Distance from tau = 0 to the nearest pole of X_d(s - tau)."""
    return abs(2 * abs(d) + 1 - complex(s))


def g_function(d: int, s: complex, tau, T: float | None = None, engine=DEFAULT_ENGINE):
    """G_d(s, tau) evaluated directly."""
    s = complex(s)
    T = conductor(d, s.imag, engine) if T is None else T
    tau = np.asarray(tau, dtype=np.complex128)
    log_ratio = log_gamma_factor(d, s - tau, engine) - log_gamma_factor(d, s, engine)
    value = np.expm1(log_ratio - tau * math.log(T))
    return complex(value) if np.ndim(value) == 0 else value


def check_expansion_hypotheses(d: int, s: complex, T: float, engine=DEFAULT_ENGINE) -> None:
    """
    Raises:
        HypothesisError: sigma outside [-1/2, 3/2] or T below T(0, 1/2)
    """
    if not EXPANSION_SIGMA_MIN <= s.real <= EXPANSION_SIGMA_MAX:
        raise HypothesisError(
            "Taylor expansion needs -1/2 <= Re(s) <= 3/2", d=d, sigma=s.real
        )
    floor = conductor(0, 0.5, engine)
    if T < floor:
        raise HypothesisError(
            "Conductor below T(0, 1/2); the expansion is not controlled", d=d, T=T, floor=floor
        )


def afe_coefficients(
    d: int,
    s: complex,
    K: int,
    engine: GammaEngine = DEFAULT_ENGINE,
    nodes: int = CAUCHY_NODES,
) -> AfeCoefficients:
    """
    a_1..a_K of G_d(s, tau) by an m-point trapezoid on |tau| = min(1, R/4).

    Raises:
        HypothesisError: outside the region where the expansion is controlled
    """
    s = complex(s)
    T = conductor(d, s.imag, engine)
    check_expansion_hypotheses(d, s, T, engine)
    radius = analyticity_radius(d, s)
    r = min(1.0, radius / 4.0)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    tau = r * np.exp(1j * theta)
    g = g_function(d, s, tau, T=T, engine=engine)
    # a_k = (1/m) sum_j G(tau_j) tau_j^-k
    k = np.arange(1, K + 1)
    a = (g[None, :] * np.exp(-1j * np.outer(k, theta))).mean(axis=1) / r**k
    return AfeCoefficients(d=d, s=s, conductor=T, radius=radius, contour_radius=r, a=a)


def coefficient_growth_constant(grid, K: int = 4, engine=DEFAULT_ENGINE) -> float:
    """
    Smallest B with |a_k| <= B^k T^(-k/4) over a grid of (d, s) points, k <= K.

    Logged at INFO as the fitted constant of the coefficient bound.
    """
    best = 0.0
    for d, s in grid:
        coeffs = afe_coefficients(d, s, K, engine)
        T = coeffs.conductor
        for k in range(1, K + 1):
            best = max(best, (abs(coeffs[k]) * T ** (k / 4.0)) ** (1.0 / k))
    logger.info("Fitted coefficient growth constant B = %.6g over %d points", best, len(grid))
    return best


def tail_constant(grid, K: int = 4, engine=DEFAULT_ENGINE) -> float:
    """
    Smallest C with

        |G - sum_{k<=K} a_k tau^k| <= C ((|t|/T)^((K+1)/2) + T^(-(K+1)/3)) |tau|^(K+1)

    sampled on |tau| = r/2, r the Cauchy contour radius.
    """
    best = 0.0
    theta = 2.0 * math.pi * np.arange(16) / 16
    for d, s in grid:
        coeffs = afe_coefficients(d, s, K, engine)
        tau = 0.5 * coeffs.contour_radius * np.exp(1j * theta)
        remainder = np.abs(g_function(d, s, tau, coeffs.conductor, engine) - coeffs.expansion(tau))
        T = coeffs.conductor
        shape = (abs(complex(s).imag) / T) ** ((K + 1) / 2.0) + T ** (-(K + 1) / 3.0)
        scale = np.abs(tau) ** (K + 1) * shape
        best = max(best, float(np.max(remainder / scale)))
    logger.info("Fitted Taylor tail constant C = %.6g over %d points", best, len(grid))
    return best
