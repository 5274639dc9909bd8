"""
Gamma factor X_d(s) of the functional equation and the analytic conductor T(d, t).

zeta(s, lambda^d) = X_d(s) zeta(1 - s, lambda^-d), with
X_d(s) = pi^(2s-1) Gamma(2|d| + 1 - s) / Gamma(2|d| + s).
"""

import math

import numpy as np

from analytic.gamma import DEFAULT_ENGINE, GammaEngine
from shared.constants import C0
from shared.exceptions import PoleError

_LOG_PI = math.log(math.pi)


def _is_nonpositive_integer(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))


def log_gamma_factor(d: int, s, engine: GammaEngine = DEFAULT_ENGINE):
    """
    A branch of log X_d(s); entries where X_d(s) = 0 come back as -inf.

    Raises:
        PoleError: 2|d| + 1 - s is a non-positive integer
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    a = 2 * abs(d) + 1 - s_arr
    b = 2 * abs(d) + s_arr
    if np.any(_is_nonpositive_integer(a)):
        raise PoleError("X_d(s) has a pole here", d=d)
    zero = _is_nonpositive_integer(b)
    safe_b = np.where(zero, 1.0, b)
    value = (2.0 * s_arr - 1.0) * _LOG_PI + engine.loggamma(a) - engine.loggamma(safe_b)
    value = np.where(zero, -np.inf + 0j, value)
    return complex(value) if value.ndim == 0 else value


def gamma_factor(d: int, s, engine: GammaEngine = DEFAULT_ENGINE):
    """
    X_d(s), exactly 0 where 2|d| + s is a non-positive integer.

    Raises:
        PoleError: 2|d| + 1 - s is a non-positive integer
    """
    value = np.exp(log_gamma_factor(d, s, engine))
    return complex(value) if np.ndim(value) == 0 else value


def conductor(d: int, t, engine: GammaEngine = DEFAULT_ENGINE):
    """T(d, t) = exp(2 Re psi(2|d| + 1/2 + it) - 2 log pi); vectorised over t."""
    t_arr = np.asarray(t, dtype=np.float64)
    psi = engine.digamma(2 * abs(d) + 0.5 + 1j * t_arr)
    value = np.exp(2.0 * np.real(psi) - 2.0 * _LOG_PI)
    return float(value) if np.ndim(value) == 0 else value


def conductor_at_zero(d: int) -> float:
    """T(d, 0) in closed form: C0^-2 exp(4 sum_{k=1..2|d|} 1/(2k-1))."""
    harmonic = math.fsum(1.0 / (2 * k - 1) for k in range(1, 2 * abs(d) + 1))
    return math.exp(4.0 * harmonic) / (C0 * C0)


def gamma_factor_ratio(d: int, s, engine: GammaEngine = DEFAULT_ENGINE) -> float:
    """|X_d(s)| / T(d, t)^(1/2 - sigma); bounded above and below on compact strips."""
    s = complex(s)
    magnitude = abs(gamma_factor(d, s, engine))
    return magnitude / conductor(d, s.imag, engine) ** (0.5 - s.real)
