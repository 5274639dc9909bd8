"""
The weighted fourth moment

    E(D; M, A) = sum_{|d| <= D} int_{-D}^{D}
                 |zeta(1/2 + it, lambda^d)|^4 |P_M(A; it, lambda^d)|^2 dt

with P_M the Dirichlet polynomial of A restricted to 0 < N(mu) <= M.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from analytic.conductor import conductor
from analytic.quadrature import simpson_weights
from hecke.coeff_maps import CoeffMap
from hecke.series import dirichlet_poly
from shared.constants import THETA_MAX
from shared.exceptions import DomainError
from zeta.afe import afe_eval
from zeta.config import AfeConfig

logger = logging.getLogger(__name__)

MAX_STEP = 0.25
CONVERGENCE_TOL = 0.01
SYMMETRY_TOL = 1e-6
# Kernel tolerance of the AFE inside the moment integrand
MOMENT_KERNEL_TOL = 1e-8

MOMENT_FIELDS = (
    "D",
    "M",
    "E",
    "error_bar",
    "envelope_thm1_14",
    "envelope_thm1_15",
    "envelope_sarnak",
    "ratio_thm1_14",
    "ratio_thm1_15",
    "ratio_sarnak",
    "converged",
)


def restrict(coeffs: CoeffMap, M: float) -> CoeffMap:
    """A restricted to 0 < N(mu) <= M."""
    bound = max(1, int(math.floor(M)))
    return CoeffMap(
        norm_bound=bound,
        support={mu: a for mu, a in coeffs.support.items() if mu.norm() <= bound},
    )


def d_symmetric(coeffs: CoeffMap) -> bool:
    """
    True when the integrand for -d mirrors the one for d: A real valued, or A(conj mu) = A(mu).
    """
    values = coeffs.support.values()
    if all(a.imag == 0 for a in values):
        return True
    return all(coeffs[mu.conj()] == a for mu, a in coeffs.support.items())


@dataclass(frozen=True)
class MomentExperiment:
    """
    One moment computation.

    step is an upper bound on the Simpson step; the step actually used never exceeds
    min(0.25, pi / (4 sqrt(T_max))). mirror computes d >= 0 only and copies the partial
    integrals to -d, which is valid when d_symmetric(A).
    """

    D: float
    M: float
    A: CoeffMap
    step: Optional[float] = None
    afe: AfeConfig = field(default_factory=lambda: AfeConfig(kernel_tol=MOMENT_KERNEL_TOL))
    theta: float = THETA_MAX
    epsilon: float = 0.1
    mirror: bool = False
    family: str = "custom"

    def __post_init__(self):
        if self.D < 1 or self.M < 1:
            raise DomainError("D and M must be at least 1", D=self.D, M=self.M)
        if not 0.0 <= self.theta <= THETA_MAX:
            raise DomainError("theta must lie in [0, 2/9]", theta=self.theta)
        if self.epsilon <= 0:
            raise DomainError("epsilon must be positive", epsilon=self.epsilon)
        if self.step is not None and self.step <= 0:
            raise DomainError("step must be positive", step=self.step)
        if self.mirror and not d_symmetric(self.A):
            raise DomainError("mirror needs A real valued or conjugation invariant")

    @property
    def characters(self) -> range:
        bound = int(math.floor(self.D))
        return range(-bound, bound + 1)

    @property
    def coeffs(self) -> CoeffMap:
        return restrict(self.A, self.M)

    def max_step(self) -> float:
        t_max = conductor(int(math.floor(self.D)), self.D)
        cap = min(MAX_STEP, math.pi / (4.0 * math.sqrt(t_max)))
        return cap if self.step is None else min(cap, self.step)

    def grid(self) -> np.ndarray:
        """Simpson nodes on [-D, D]; the interval count is a multiple of 4 so 2h is usable too."""
        intervals = 4 * math.ceil(2.0 * self.D / (4.0 * self.max_step()))
        return np.linspace(-self.D, self.D, intervals + 1)

    def halved(self) -> "MomentExperiment":
        return replace(self, step=self.max_step() / 2.0)

    def as_record(self) -> dict:
        coeffs = self.coeffs
        return {
            "D": self.D,
            "M": self.M,
            "family": self.family,
            "support": len(coeffs),
            "l2_squared": coeffs.l2_squared(),
            "sup_squared": coeffs.sup_squared(),
            "step": self.max_step(),
            "rule": "simpson",
            "theta": self.theta,
            "epsilon": self.epsilon,
            "mirror": self.mirror,
            "afe": self.afe.as_record(),
        }


@dataclass(frozen=True)
class CharacterIntegral:
    """The t-integral for one d at steps h and 2h, with its first-order error bar."""

    d: int
    value: float
    coarse: float
    error_bar: float
    points: int

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "value": self.value,
            "coarse": self.coarse,
            "error_bar": self.error_bar,
            "points": self.points,
        }

    def mirrored(self) -> "CharacterIntegral":
        return replace(self, d=-self.d)


@dataclass(frozen=True)
class MomentResult:
    E: float
    per_d: list[CharacterIntegral]
    error_bar: float
    coarse_E: float
    converged: bool
    symmetric: Optional[bool]
    envelope_thm1_14: float
    envelope_thm1_15: float
    envelope_sarnak: float
    ratios: dict
    runtime_sec: float
    config_echo: dict

    @property
    def D(self) -> float:
        return self.config_echo["D"]

    @property
    def M(self) -> float:
        return self.config_echo["M"]

    def as_record(self) -> dict:
        return {
            "E": self.E,
            "error_bar": self.error_bar,
            "coarse_E": self.coarse_E,
            "converged": self.converged,
            "symmetric": self.symmetric,
            "per_d": [part.as_record() for part in self.per_d],
            "envelope_thm1_14": self.envelope_thm1_14,
            "envelope_thm1_15": self.envelope_thm1_15,
            "envelope_sarnak": self.envelope_sarnak,
            "ratios": self.ratios,
            "runtime_sec": self.runtime_sec,
            "config": self.config_echo,
        }

    def as_row(self) -> dict:
        return {
            "D": self.D,
            "M": self.M,
            "E": self.E,
            "error_bar": self.error_bar,
            "envelope_thm1_14": self.envelope_thm1_14,
            "envelope_thm1_15": self.envelope_thm1_15,
            "envelope_sarnak": self.envelope_sarnak,
            "ratio_thm1_14": self.ratios["thm1_14"],
            "ratio_thm1_15": self.ratios["thm1_15"],
            "ratio_sarnak": self.ratios["sarnak"],
            "converged": self.converged,
        }


def integrate_character(job) -> CharacterIntegral:
    """
    Simpson integral of |zeta|^4 |P_M|^2 over the grid for one d.

    job is (d, t grid, coefficient map, AfeConfig).
    """
    d, t, coeffs, cfg = job
    if len(coeffs) == 0:
        return CharacterIntegral(d=d, value=0.0, coarse=0.0, error_bar=0.0, points=len(t))
    poly = np.abs(np.asarray(dirichlet_poly(coeffs, 1j * t, d))) ** 2
    zeta = np.empty(len(t))
    zeta_err = np.empty(len(t))
    for k, height in enumerate(t.tolist()):
        value = afe_eval(d, complex(0.5, height), cfg)
        zeta[k] = abs(value.value)
        zeta_err[k] = value.err_estimate
    integrand = zeta**4 * poly
    step = float(t[1] - t[0])
    fine = simpson_weights(len(t) - 1, step)
    coarse = simpson_weights((len(t) - 1) // 2, 2.0 * step)
    error_bar = float(np.sum(fine * 4.0 * zeta**3 * zeta_err * poly))
    return CharacterIntegral(
        d=d,
        value=float(np.sum(fine * integrand)),
        coarse=float(np.sum(coarse * integrand[::2])),
        error_bar=error_bar,
        points=len(t),
    )
