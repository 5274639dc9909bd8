"""
Complex log-gamma and digamma.

Arguments are shifted upward by the recurrence until Re(z) reaches the asymptotic
threshold, then the Stirling series with ten Bernoulli terms is applied. No reflection
formula is used.
"""

import math
from dataclasses import dataclass

import numpy as np

from shared.constants import BERNOULLI_EVEN
from shared.exceptions import PoleError

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _as_complex_array(z) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _check_poles(z: np.ndarray) -> None:
    real_part = z.real
    on_pole = (z.imag == 0.0) & (real_part <= 0.0) & (real_part == np.round(real_part))
    if np.any(on_pole):
        raise PoleError(
            "Gamma has a pole at non-positive integers",
            z=float(real_part[on_pole].flat[0]),
        )


@dataclass(frozen=True)
class GammaEngine:
    """Stirling-series evaluator for log Gamma and psi on complex arguments."""

    asymptotic_threshold: float = 12.0
    bernoulli_terms: int = 10

    def _shift(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
        """Return (w, m, max m) with w = z + m and Re(w) >= threshold."""
        m = np.maximum(0, np.ceil(self.asymptotic_threshold - z.real)).astype(np.int64)
        return z + m, m, int(m.max(initial=0))

    def loggamma(self, z):
        """
        A branch of log Gamma(z); exp(loggamma(z)) == Gamma(z).

        Raises:
            PoleError: z is a non-positive integer
        """
        z, scalar = _as_complex_array(z)
        _check_poles(z)
        w, m, m_max = self._shift(z)
        correction = np.zeros(z.shape, dtype=np.complex128)
        for k in range(m_max):
            active = m > k
            correction = correction + np.where(active, np.log(np.where(active, z + k, 1.0)), 0.0)

        inv = 1.0 / w
        inv2 = inv * inv
        series = np.zeros(z.shape, dtype=np.complex128)
        power = inv
        for k, b2k in enumerate(BERNOULLI_EVEN[: self.bernoulli_terms], start=1):
            series = series + float(b2k) / (2 * k * (2 * k - 1)) * power
            power = power * inv2
        value = (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series - correction
        return complex(value) if scalar else value

    def digamma(self, z):
        """
        psi(z) = Gamma'(z) / Gamma(z).

        Raises:
            PoleError: z is a non-positive integer
        """
        z, scalar = _as_complex_array(z)
        _check_poles(z)
        w, m, m_max = self._shift(z)
        correction = np.zeros(z.shape, dtype=np.complex128)
        for k in range(m_max):
            active = m > k
            correction = correction + np.where(active, 1.0 / np.where(active, z + k, 1.0), 0.0)

        inv = 1.0 / w
        inv2 = inv * inv
        series = np.zeros(z.shape, dtype=np.complex128)
        power = inv2
        for k, b2k in enumerate(BERNOULLI_EVEN[: self.bernoulli_terms], start=1):
            series = series + float(b2k) / (2 * k) * power
            power = power * inv2
        value = np.log(w) - 0.5 * inv - series - correction
        return complex(value) if scalar else value

    def gamma(self, z):
        value = np.exp(self.loggamma(z))
        return complex(value) if np.ndim(value) == 0 else value


DEFAULT_ENGINE = GammaEngine()


def loggamma(z):
    return DEFAULT_ENGINE.loggamma(z)


def digamma(z):
    return DEFAULT_ENGINE.digamma(z)


def digamma_asymptotic_gap(z):
    """psi(z) - (log z - 1/(2z)); O(|z|^-2) in the right half-plane."""
    z, scalar = _as_complex_array(z)
    value = DEFAULT_ENGINE.digamma(z) - (np.log(z) - 0.5 / z)
    return complex(value) if scalar else value
