"""
Second-sum kernels of the approximate functional equation.

Both kernels share the first sum sum_n rho(n/x) delta(n) n^-s and differ in how the dual sum
X_d(s) sum_n V(n/y) delta(n) n^(s-1) is weighted.
"""

import logging
import math
from functools import lru_cache

import numpy as np

from analytic.conductor import gamma_factor, log_gamma_factor
from analytic.mellin import mellin_r, tabulate
from analytic.smoothing import SmoothingConfig, rho, rho_tilde
from analytic.taylor import afe_coefficients
from hecke.coefficients import coefficients_upto
from shared.exceptions import CoeffCapError, PoleError
from zeta.config import AfeConfig, ZetaValue

logger = logging.getLogger(__name__)


def error_exponents(K: int) -> tuple[float, float]:
    """(alpha_K, beta_K) of the error term shape."""
    if K <= 1:
        return 1.0, 1.0
    if K == 2:
        return 2.0, 1.0
    return (K + 1) / 2.0, (K + 1) / 3.0


def smoothed_sum(d, s, length, weight, exponent_shift, cfg: AfeConfig):
    """
    sum over n <= b * length of weight(n / length) delta(Lambda^d, n) n^e,
    with e = -s when exponent_shift < 0 and e = s - 1 otherwise.

    Returns:
        (value, number of terms)
    """
    n_max = int(math.floor(cfg.smoothing.b * length))
    if n_max < 1:
        return 0j, 0
    delta = coefficients_upto(d, n_max, cfg.coeff_cap)[1 : n_max + 1]
    n = np.arange(1, n_max + 1, dtype=np.float64)
    exponent = -s if exponent_shift < 0 else s - 1.0
    terms = weight(n / length) * delta * np.exp(exponent * np.log(n))
    return complex(np.sum(terms)), n_max


class TaylorKernel:
    """rho_tilde_K weights and the regularised pole term (pi/4) e^-|s-1| / (s-1)."""

    name = "taylor"

    @staticmethod
    def evaluate(d: int, s: complex, T: float, x: float, y: float, cfg: AfeConfig) -> ZetaValue:
        sm = cfg.smoothing
        first, n1 = smoothed_sum(d, s, x, lambda u: rho(sm, u), -1, cfg)

        second, n2 = 0j, 0
        if sm.b * y >= 1.0:
            x_s = gamma_factor(d, s)
            if x_s == 0:
                raise PoleError("Taylor kernel is undefined where X_d(s) = 0", d=d)
            coeffs = afe_coefficients(d, s, cfg.K) if cfg.K > 0 else None
            dual, n2 = smoothed_sum(d, s, y, lambda u: rho_tilde(sm, coeffs, u), 1, cfg)
            second = x_s * dual

        pole = 0j
        if d == 0:
            pole = (math.pi / 4.0) * np.exp(-abs(s - 1.0)) / (s - 1.0)

        alpha, beta = error_exponents(cfg.K)
        err = (
            cfg.error_constant
            * T ** (1.0 / 6.0 + cfg.epsilon)
            * x ** (0.5 - s.real)
            * ((abs(s.imag) / T) ** alpha + T ** (-beta))
        )
        return ZetaValue(
            d=d,
            s=s,
            value=complex(first + second + pole),
            err_estimate=float(err),
            T=T,
            split=(x, y),
            terms_used=(n1, n2),
            K=cfg.K,
            kernel="taylor",
        )


@lru_cache(maxsize=32)
def _mellin_table(smoothing: SmoothingConfig, abscissa: float, step: float, height: float):
    return tabulate(smoothing, abscissa, step, height)


def line_height(log_b: float, tol: float, growth: float) -> float:
    """
    Height where |R(c + iv)| (about exp(-sqrt(2 v log b))) times |v|^growth drops below tol.
    """
    target = math.log(1.0 / tol) + 6.0
    height = target * target / (2.0 * log_b)
    for _ in range(3):
        adjusted = target + growth * math.log1p(height)
        height = adjusted * adjusted / (2.0 * log_b)
    return height


class MellinKernel:
    """
    Exact kernel: the dual weight is X_d(s) rho(u) plus

        (1 / 2 pi i) int R(w) [X_d(s - w) T^-w - X_d(s)] u^-w dw

    on Re w = max(0, sigma - 1/2 - 2|d|), with the pole term -(pi/4) R(1 - s) x^(1-s) at d = 0.
    The bracket vanishes at w = 0, so the line may pass through the pole of R.

    The dual sum is taken over n <= b y, the support of rho(n/y); the weight for n > b y is
    summed separately, block by block, as the tail.
    """

    name = "mellin"
    STEP = 0.08
    BLOCK = 64

    @classmethod
    def evaluate(cls, d: int, s: complex, T: float, x: float, y: float, cfg: AfeConfig):
        sm = cfg.smoothing
        first, n1 = smoothed_sum(d, s, x, lambda u: rho(sm, u), -1, cfg)

        abscissa = max(0.0, s.real - 0.5 - 2 * abs(d))
        growth = max(0.0, 1.0 - 2.0 * (s.real - abscissa))
        height = line_height(sm.log_b, cfg.kernel_tol, growth)
        table = _mellin_table(sm, round(abscissa, 12), cls.STEP, round(height, 6))
        v = np.concatenate((-table.v[::-1], table.v))
        r = np.concatenate((np.conj(table.values[::-1]), table.values))
        w = abscissa + 1j * v

        log_t = math.log(T)
        x_s = gamma_factor(d, s)
        bracket = np.exp(log_gamma_factor(d, s - w) - w * log_t) - x_s
        weights = r * bracket * (cls.STEP / (2.0 * math.pi))
        cap = cfg.coeff_cap

        def dual_terms(start: int, stop: int) -> np.ndarray:
            if cap is not None and stop > cap:
                raise CoeffCapError(
                    f"Dual sum did not converge within the coefficient cap {cap}", cap=cap
                )
            delta = coefficients_upto(d, stop, cap)[start : stop + 1]
            n = np.arange(start, stop + 1, dtype=np.float64)
            log_u = np.log(n / y)
            integral = np.exp(-abscissa * log_u) * (np.exp(-1j * np.outer(log_u, v)) @ weights)
            kernel_values = x_s * rho(sm, n / y) + integral
            return delta * np.exp((s - 1.0) * np.log(n)) * kernel_values

        n2 = int(math.floor(sm.b * y))
        dual, scale = 0j, 0.0
        if n2 >= 1:
            head = dual_terms(1, n2)
            dual = complex(np.sum(head))
            scale = float(np.sum(np.abs(head)))

        tail, last_block = 0j, 0.0
        start, stop = n2 + 1, n2 + cls.BLOCK
        while True:
            terms = dual_terms(start, stop)
            block_abs = float(np.sum(np.abs(terms)))
            tail += complex(np.sum(terms))
            scale += block_abs
            last_block = block_abs
            if block_abs <= cfg.kernel_tol * (1.0 + abs(dual + tail)):
                break
            start, stop = stop + 1, stop + cls.BLOCK

        pole = 0j
        if d == 0:
            pole = -(math.pi / 4.0) * mellin_r(sm, 1.0 - s) * np.exp((1.0 - s) * math.log(x))

        logger.debug(
            "Mellin AFE d=%d s=%s: T=%.4g, %d + %d terms, tail of %d terms, line Re w = %.3g",
            d,
            s,
            T,
            n1,
            n2,
            stop - n2,
            abscissa,
        )
        return ZetaValue(
            d=d,
            s=s,
            value=complex(first + dual + tail + pole),
            err_estimate=float(last_block + cfg.kernel_tol * (1.0 + scale + abs(first))),
            T=T,
            split=(x, y),
            terms_used=(n1, n2),
            K=None,
            kernel="mellin",
            tail=tail,
            tail_terms=stop - n2,
        )


KERNEL_CLASSES = {"taylor": TaylorKernel, "mellin": MellinKernel}
