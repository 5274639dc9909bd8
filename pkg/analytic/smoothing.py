"""
Compactly supported smoothing built from the bump Phi(tau) = exp(-1/(1 - tau^2)).

The partition rho(u) + rho(1/u) = 1 is supported in [1/b, b]; the family W_eta, Omega_eta,
Upsilon_eta lives on [1, e^eta] and is used for dyadic decompositions.

Integrals of Phi use the substitution tau = tanh(x), which turns Phi(tau) dtau into
exp(-cosh(x)^2) sech(x)^2 dx, an entire integrand with double-exponential decay; a fixed
Gauss-Legendre rule is then accurate to machine precision.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from analytic.quadrature import gauss_legendre
from analytic.taylor import AfeCoefficients
from shared.constants import MAX_BUMP_DERIVATIVE
from shared.exceptions import DomainError

# exp(-cosh(3.5)^2) < 1e-119
TANH_CUTOFF = 3.5
DEFAULT_B = math.sqrt(2.0)
DEFAULT_ETA = math.log(2.0) / 3.0
DEFAULT_QUAD_NODES = 256


@dataclass(frozen=True)
class SmoothingConfig:
    """Shape parameters of the smoothing functions."""

    b: float = DEFAULT_B
    eta: float = DEFAULT_ETA
    quad_nodes: int = DEFAULT_QUAD_NODES

    def __post_init__(self):
        if not 1.0 < self.b <= math.e:
            raise DomainError("b must lie in (1, e]", b=self.b)
        if not 0.0 < self.eta <= math.log(2.0) / 3.0 + 1e-15:
            raise DomainError("eta must lie in (0, log(2)/3]", eta=self.eta)
        if self.quad_nodes < 32:
            raise DomainError("quad_nodes must be at least 32", quad_nodes=self.quad_nodes)

    @property
    def log_b(self) -> float:
        return math.log(self.b)

    def as_record(self) -> dict:
        return {"b": self.b, "eta": self.eta, "quad_nodes": self.quad_nodes}


# The bump


def bump(tau):
    """Phi(tau), zero outside (-1, 1)."""
    tau = np.asarray(tau, dtype=np.float64)
    inside = np.abs(tau) < 1.0
    safe = np.where(inside, tau, 0.0)
    value = np.where(inside, np.exp(-1.0 / (1.0 - safe * safe)), 0.0)
    return float(value) if value.ndim == 0 else value


def _tanh_integrand(x: np.ndarray) -> np.ndarray:
    sech = 1.0 / np.cosh(x)
    return np.exp(-np.cosh(x) ** 2) * sech * sech


def bump_integral_upper(tau, quad_nodes: int = DEFAULT_QUAD_NODES):
    """J(tau) = integral of Phi over [tau, 1], for tau >= 0."""
    tau = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    nodes, weights = gauss_legendre(quad_nodes)
    lower = np.arctanh(np.clip(tau, 0.0, math.tanh(TANH_CUTOFF)))
    half = 0.5 * (TANH_CUTOFF - lower)
    x = lower[:, None] + half[:, None] * (nodes[None, :] + 1.0)
    return (half[:, None] * weights[None, :] * _tanh_integrand(x)).sum(axis=1)


@lru_cache(maxsize=16)
def bump_mass(quad_nodes: int = DEFAULT_QUAD_NODES) -> float:
    """integral of Phi over [-1, 1]."""
    return 2.0 * float(bump_integral_upper(0.0, quad_nodes)[0])


def bump_tail(tau, quad_nodes: int = DEFAULT_QUAD_NODES):
    """
    c * integral of Phi over [tau, 1], with c = 1 / bump_mass.

    Equals 1 for tau <= -1 and 0 for tau >= 1. Negative arguments go through
    bump_tail(tau) = 1 - bump_tail(-tau), which makes the reflection exact.
    """
    tau_arr = np.asarray(tau, dtype=np.float64)
    flat = np.atleast_1d(tau_arr)
    c = 1.0 / bump_mass(quad_nodes)
    out = np.empty(flat.shape, dtype=np.float64)
    out[flat >= 1.0] = 0.0
    out[flat <= -1.0] = 1.0
    pos = (flat >= 0.0) & (flat < 1.0)
    neg = (flat < 0.0) & (flat > -1.0)
    if np.any(pos):
        out[pos] = c * bump_integral_upper(flat[pos], quad_nodes)
    if np.any(neg):
        out[neg] = 1.0 - c * bump_integral_upper(-flat[neg], quad_nodes)
    return float(out[0]) if tau_arr.ndim == 0 else out.reshape(tau_arr.shape)


@lru_cache(maxsize=1)
def derivative_polynomials() -> tuple[np.ndarray, ...]:
    """
    Coefficient arrays (highest degree first) of P_0..P_12, where
    Phi^(k)(t) = P_k(t) Phi(t) / (1 - t^2)^(2k).
    """
    t = sympy.Symbol("t")
    p = sympy.Poly(1, t, domain="ZZ")
    t_poly = sympy.Poly(t, t, domain="ZZ")
    one_minus = sympy.Poly(1 - t**2, t, domain="ZZ")
    polys = [p]
    for k in range(MAX_BUMP_DERIVATIVE):
        p = p.diff(t) * one_minus**2 + 4 * k * t_poly * p * one_minus - 2 * t_poly * p
        polys.append(p)
    return tuple(np.array([float(c) for c in q.all_coeffs()]) for q in polys)


def bump_derivative(k: int, tau):
    """
    Phi^(k)(tau) for 0 <= k <= 12.

    Raises:
        DomainError: k outside 0..12
    """
    if not 0 <= k <= MAX_BUMP_DERIVATIVE:
        raise DomainError(
            f"Bump derivatives are available up to order {MAX_BUMP_DERIVATIVE}", k=k
        )
    tau = np.asarray(tau, dtype=np.float64)
    inside = np.abs(tau) < 1.0
    safe = np.where(inside, tau, 0.0)
    gap = 1.0 - safe * safe
    envelope = np.exp(-1.0 / gap - 2.0 * k * np.log(gap))
    value = np.where(inside, np.polyval(derivative_polynomials()[k], safe) * envelope, 0.0)
    return float(value) if value.ndim == 0 else value


# The partition of unity rho


def _log_ratio(cfg: SmoothingConfig, u) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if np.any(u <= 0.0):
        raise DomainError("rho is defined for u > 0")
    return np.log(u) / cfg.log_b


def rho(cfg: SmoothingConfig, u):
    """rho(u): 1 on (0, 1/b], 0 on [b, inf), rho(u) + rho(1/u) = 1."""
    value = bump_tail(_log_ratio(cfg, u), cfg.quad_nodes)
    return float(value) if np.ndim(value) == 0 else value


def rho_k(cfg: SmoothingConfig, k: int, u):
    """
    (u d/du)^k rho(u) = -c (log b)^-k Phi^(k-1)(log u / log b), for 1 <= k <= 12.
    """
    if not 1 <= k <= MAX_BUMP_DERIVATIVE:
        raise DomainError(f"rho_k is available for 1 <= k <= {MAX_BUMP_DERIVATIVE}", k=k)
    c = 1.0 / bump_mass(cfg.quad_nodes)
    value = -c * cfg.log_b ** (-k) * bump_derivative(k - 1, _log_ratio(cfg, u))
    return float(value) if np.ndim(value) == 0 else value


def rho_tilde(cfg: SmoothingConfig, coeffs: AfeCoefficients | None, u):
    """rho(u) + sum_{k<=K} (-1)^k a_k rho_k(u); complex valued."""
    value = np.asarray(rho(cfg, u), dtype=np.complex128)
    if coeffs is not None:
        for k in range(1, coeffs.K + 1):
            value = value + (-1) ** k * coeffs[k] * rho_k(cfg, k, u)
    return complex(value) if value.ndim == 0 else value


# The family W_eta, Omega_eta, Upsilon_eta


@dataclass(frozen=True)
class WEtaFamily:
    """
    Omega(u) = kappa Phi(tau(u)) on [1, e^eta], normalised so that (1/eta) int Omega = 1;
    W(u) = (1/eta) int_u^inf Omega; Upsilon(u) = W(u) - W(e^eta u).
    """

    config: SmoothingConfig

    @property
    def eta(self) -> float:
        return self.config.eta

    @property
    def kappa(self) -> float:
        return 2.0 * self.eta / (math.expm1(self.eta) * bump_mass(self.config.quad_nodes))

    def _tau(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.float64)
        return 2.0 * (u - 1.0) / math.expm1(self.eta) - 1.0

    def omega(self, u):
        value = self.kappa * bump(self._tau(u))
        return float(value) if np.ndim(value) == 0 else value

    def w(self, u):
        value = bump_tail(self._tau(u), self.config.quad_nodes)
        return float(value) if np.ndim(value) == 0 else value

    def upsilon(self, u):
        u = np.asarray(u, dtype=np.float64)
        value = self.w(u) - self.w(math.exp(self.eta) * u)
        return float(value) if np.ndim(value) == 0 else value

    def upsilon_derivative(self, u):
        """Upsilon'(u) = (-Omega(u) + e^eta Omega(e^eta u)) / eta."""
        u = np.asarray(u, dtype=np.float64)
        scale = math.exp(self.eta)
        value = (-self.omega(u) + scale * self.omega(scale * u)) / self.eta
        return float(value) if np.ndim(value) == 0 else value

    def dyadic_count(self, big_b: float) -> int:
        """Number of h with 0 <= h < 1 + log(B) / eta."""
        return math.ceil(1.0 + math.log(big_b) / self.eta)

    def dyadic_sum(self, norm, big_b: float):
        """sum_h Upsilon(norm / (B e^(-h eta))), which telescopes to W(norm / B)."""
        norm = np.asarray(norm, dtype=np.float64)
        total = np.zeros(norm.shape)
        for h in range(self.dyadic_count(big_b)):
            total = total + self.upsilon(norm / (big_b * math.exp(-h * self.eta)))
        return float(total) if total.ndim == 0 else total


def w_eta_family(cfg: SmoothingConfig | None = None) -> WEtaFamily:
    return WEtaFamily(cfg or SmoothingConfig())
