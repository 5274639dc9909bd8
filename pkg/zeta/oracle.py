"""
Independent evaluation of zeta(s) L(s, chi_4) = zeta(s, lambda^0).

Both factors are alternating series (the eta function and L(s, chi_4) itself), summed with
Borwein's acceleration. Left of Re(s) = 0 the functional equation with X_0 is applied.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from analytic.conductor import gamma_factor
from shared.exceptions import PoleAtOne

_LOG_CONVERGENCE = math.log(3.0 + math.sqrt(8.0))


@lru_cache(maxsize=32)
def borwein_weights(n: int) -> np.ndarray:
    """
    Weights w_k = (d_n - d_k) / d_n, 0 <= k < n, of Borwein's alternating-series method.

    d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!) is accumulated exactly.
    """
    term = Fraction(1, n)
    running = term
    partial = [running]
    for i in range(1, n + 1):
        term = term * (n + i - 1) * 4 * (n - i + 1) / ((2 * i - 1) * (2 * i))
        running += term
        partial.append(running)
    d_n = partial[n]
    return np.array([float((d_n - partial[k]) / d_n) for k in range(n)])


def _term_count(t: float) -> int:
    # error ~ (3 + sqrt 8)^-n e^(pi |t| / 2) (1 + 2|t|); aim below 1e-13
    budget = 30.0 + math.pi * abs(t) / 2.0 + math.log1p(2.0 * abs(t))
    return int(math.ceil(budget / _LOG_CONVERGENCE)) + 10


def alternating_sum(s: complex, bases: np.ndarray, n: int) -> complex:
    """sum_k (-1)^k w_k bases_k^-s with Borwein weights."""
    w = borwein_weights(n)
    signs = np.where(np.arange(n) % 2, -1.0, 1.0)
    return complex(np.sum(signs * w * np.exp(-s * np.log(bases[:n]))))


def dirichlet_eta(s: complex) -> complex:
    n = _term_count(complex(s).imag)
    return alternating_sum(complex(s), np.arange(1, n + 1, dtype=np.float64), n)


def l_chi4(s: complex) -> complex:
    n = _term_count(complex(s).imag)
    return alternating_sum(complex(s), np.arange(1, 2 * n + 1, 2, dtype=np.float64), n)


def riemann_zeta(s: complex) -> complex:
    """zeta(s) = eta(s) / (1 - 2^(1-s)), for Re(s) >= 0 and s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta(s) has a pole at s = 1")
    return dirichlet_eta(s) / (1.0 - 2.0 ** (1.0 - s))


def zeta_d0_oracle(s: complex) -> complex:
    """
    zeta(s) L(s, chi_4).

    Raises:
        PoleAtOne: s == 1
    """
    s = complex(s)
    if s == 1:
        raise PoleAtOne()
    if s.real < 0.0:
        return complex(gamma_factor(0, s) * zeta_d0_oracle(1.0 - s))
    if abs(1.0 - 2.0 ** (1.0 - s)) < 1e-6:
        # eta / (1 - 2^(1-s)) is 0/0 on Re(s) = 1; step through the functional equation
        return complex(gamma_factor(0, s) * zeta_d0_oracle(1.0 - s))
    return riemann_zeta(s) * l_chi4(s)
