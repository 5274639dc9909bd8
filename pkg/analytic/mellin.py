"""
The Mellin kernel R(z) = -z^-1 int_0^inf rho'(u) u^z du of the partition of unity.

Substituting u = b^tau gives R(z) = (c / z) int_{-1}^{1} Phi(tau) e^(z tau log b) dtau, an
entire function divided by z: a simple pole at 0 with residue 1 and R(-z) = -R(z).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from analytic.quadrature import gauss_legendre
from analytic.smoothing import TANH_CUTOFF, SmoothingConfig, bump_mass, rho
from shared.exceptions import PoleAtZero

logger = logging.getLogger(__name__)

# rows per block when tabulating many values of z
_BLOCK = 256


def _node_count(cfg: SmoothingConfig, max_imag: float) -> int:
    # the phase |Im z| log b tanh(x) needs about one node per radian over the x-range
    return max(cfg.quad_nodes, int(math.ceil(TANH_CUTOFF * max_imag * cfg.log_b)) + 64)


def _transform(cfg: SmoothingConfig, z: np.ndarray) -> np.ndarray:
    """c * int Phi(tau) e^(z tau log b) dtau for a 1-d array z."""
    out = np.empty(z.shape, dtype=np.complex128)
    c = 1.0 / bump_mass(cfg.quad_nodes)
    for start in range(0, len(z), _BLOCK):
        block = z[start : start + _BLOCK]
        n = _node_count(cfg, float(np.max(np.abs(block.imag), initial=0.0)))
        x, w = gauss_legendre(n, -TANH_CUTOFF, TANH_CUTOFF)
        sech = 1.0 / np.cosh(x)
        weight = w * np.exp(-np.cosh(x) ** 2) * sech * sech
        phase = np.exp(np.outer(block * cfg.log_b, np.tanh(x)))
        out[start : start + _BLOCK] = c * (phase @ weight)
    return out


def mellin_r(cfg: SmoothingConfig, z):
    """
    R(z) for scalar or array z.

    Raises:
        PoleAtZero: z == 0
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if np.any(z_arr == 0):
        raise PoleAtZero("R(z) has a simple pole at z = 0 with residue 1")
    value = _transform(cfg, z_arr.ravel()).reshape(z_arr.shape) / z_arr
    return complex(value[0]) if np.ndim(z) == 0 else value


def mellin_inverse(cfg: SmoothingConfig, u: float, c: float = 1.0, height: float = 400.0) -> float:
    """
    (1 / 2 pi i) int_{c - iV}^{c + iV} R(z) u^-z dz, which tends to rho(u) as V grows.
    """
    n = int(max(256, 4 * height * (cfg.log_b + abs(math.log(u)) + 1.0)))
    v, w = gauss_legendre(n, 0.0, height)
    z = c + 1j * v
    integrand = mellin_r(cfg, z) * np.exp(-z * math.log(u))
    # the conjugate half of the line contributes the complex conjugate
    return float(np.real(integrand @ w) / math.pi)


def rho_integral(cfg: SmoothingConfig) -> float:
    """int_0^inf rho(u) du by adaptive quadrature; equals R(1)."""
    inner, _ = integrate.quad(lambda u: rho(cfg, u), 1.0 / cfg.b, cfg.b, epsabs=1e-14, limit=200)
    return 1.0 / cfg.b + inner


@dataclass(frozen=True)
class MellinTable:
    """R(c + iv) on the midpoint grid v_j = (j + 1/2) h, 0 <= j < n."""

    abscissa: float
    step: float
    v: np.ndarray
    values: np.ndarray


def tabulate(cfg: SmoothingConfig, abscissa: float, step: float, height: float) -> MellinTable:
    """R on the upper half of the line Re z = abscissa; the lower half is its conjugate."""
    n = int(math.ceil(height / step))
    v = (np.arange(n) + 0.5) * step
    values = mellin_r(cfg, abscissa + 1j * v)
    logger.debug(
        "Tabulated R on Re z = %.4g: %d points up to |Im z| = %.1f", abscissa, n, v[-1]
    )
    return MellinTable(abscissa=abscissa, step=step, v=v, values=values)
