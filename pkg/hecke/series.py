"""
Dirichlet series of the Hecke characters: polynomials, partial sums and Euler products.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sympy import sieve

from gauss.factorization import split_prime
from hecke.characters import char_values, quartic_angle
from hecke.coeff_maps import CoeffMap
from hecke.coefficients import coefficients_upto
from shared.exceptions import DomainError

logger = logging.getLogger(__name__)

# Tail estimates are reported only on Re(s) >= 4/3.
TAIL_SIGMA_MIN = 4.0 / 3.0


@dataclass(frozen=True)
class PartialSum:
    value: complex
    terms: int
    tail_bound: Optional[float] = None

    def as_record(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "terms": self.terms,
            "tail_bound": self.tail_bound,
        }


def dirichlet_poly(coeffs: CoeffMap, s, d: int):
    """
    P(A; s, Lambda^d) = sum_mu A(mu) Lambda^d(mu) N(mu)^(-s).

    s may be a scalar or an array; the result has the shape of s. The sum runs in the
    CoeffMap iteration order.
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    if len(coeffs) == 0:
        zero = np.zeros(s_arr.shape, dtype=np.complex128)
        return complex(zero) if zero.ndim == 0 else zero
    re, im, values = coeffs.arrays
    weights = values * char_values(d, re, im)
    log_norms = np.log((re * re + im * im).astype(np.float64))
    result = np.exp(-np.multiply.outer(s_arr, log_norms)) @ weights
    return complex(result) if np.ndim(result) == 0 else result


def divisor_tail_bound(sigma: float, n: int) -> float:
    """
    Upper bound for sum_{m > n} d(m) m^-sigma, sigma > 1.

    From D(x) <= x (log x + 1) and partial summation.
    """
    return sigma * n ** (1.0 - sigma) * (
        (math.log(n) + 1.0) / (sigma - 1.0) + 1.0 / (sigma - 1.0) ** 2
    )


def partial_zeta(s: complex, d: int, n: int) -> PartialSum:
    """
    sum_{m <= n} delta(Lambda^d, m) m^-s, with a tail bound when Re(s) >= 4/3.
    """
    if n < 1:
        raise DomainError("partial sum needs at least one term", n=n)
    s = complex(s)
    delta = coefficients_upto(d, n)[1 : n + 1]
    m = np.arange(1, n + 1, dtype=np.float64)
    value = complex(np.sum(delta * np.exp(-s * np.log(m))))
    tail = divisor_tail_bound(s.real, n) if s.real >= TAIL_SIGMA_MIN else None
    return PartialSum(value=value, terms=n, tail_bound=tail)


def prime_ideal_table(norm_bound: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """
    (norms, lambda^d values) of the prime ideals with norm <= norm_bound.
    """
    norms, chars = [], []
    for p in sieve.primerange(2, norm_bound + 1):
        if p == 2:
            norms.append(2.0)
            chars.append(-1.0 if d % 2 else 1.0)
        elif p % 4 == 1:
            pi = split_prime(p)
            angle = d * quartic_angle(pi.re, pi.im)
            norms.extend((float(p), float(p)))
            chars.append(complex(math.cos(angle), math.sin(angle)))
            chars.append(complex(math.cos(angle), -math.sin(angle)))
        elif p * p <= norm_bound:
            norms.append(float(p * p))
            chars.append(1.0)
    return np.array(norms), np.array(chars, dtype=np.complex128)


def euler_product_partial(s: complex, d: int, norm_bound: int) -> complex:
    """
    prod over prime ideals with N(p) <= norm_bound of (1 - lambda^d(p) N(p)^-s)^-1.

    Raises:
        DomainError: Re(s) <= 1
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError("Euler product requires Re(s) > 1", sigma=s.real)
    norms, chars = prime_ideal_table(norm_bound, d)
    log_terms = np.log1p(-chars * np.exp(-s * np.log(norms)))
    return complex(np.exp(-np.sum(log_terms)))

