"""
Dirichlet coefficients delta(Lambda^d, n) = sum of lambda^d over the ideals of norm n.

Two routes are provided: a per-n route through the factorisation of n, and a multiplicative
sieve for whole tables. They agree to 1e-12.
"""

import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache

from django.conf import settings

import numpy as np
from sympy import factorint, sieve

from gauss.factorization import split_prime
from gauss.types import GaussInt
from hecke.characters import char_value, quartic_angle
from shared.exceptions import CoeffCapError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoeffTable:
    """delta(Lambda^d, n) for 1 <= n <= up_to; values[0] is unused and zero."""

    d: int
    up_to: int
    values: np.ndarray

    def __getitem__(self, n: int) -> float:
        if not 1 <= n <= self.up_to:
            raise IndexError(f"n = {n} outside 1..{self.up_to}")
        return float(self.values[n])

    def as_list(self) -> list[float]:
        return self.values[1:].tolist()

    def as_rows(self) -> list[dict]:
        return [{"n": n, "delta": float(v)} for n, v in enumerate(self.values[1:], start=1)]


def _split_angle(p: int) -> float:
    """4*arg of the canonical prime above p = 1 (mod 4)."""
    pi = split_prime(p)
    return quartic_angle(pi.re, pi.im)


def _local_factors(d: int, p: int, max_exponent: int) -> np.ndarray:
    """delta(Lambda^d, p^k) for k = 0..max_exponent."""
    f = np.ones(max_exponent + 1, dtype=np.float64)
    if p == 2:
        sign = -1.0 if d % 2 else 1.0
        for k in range(1, max_exponent + 1):
            f[k] = f[k - 1] * sign
    elif p % 4 == 3:
        f[1::2] = 0.0
    else:
        # sum_{j=0..k} exp(i(2j-k)phi) = U_k(cos phi)
        c = math.cos(d * _split_angle(p))
        if max_exponent >= 1:
            f[1] = 2.0 * c
        for k in range(2, max_exponent + 1):
            f[k] = 2.0 * c * f[k - 1] - f[k - 2]
    return f


def delta_coeff(d: int, n: int) -> float:
    """
    delta(Lambda^d, n) through the factorisation of n.

    The ideals of norm n are enumerated from the prime-ideal decomposition; lambda^d is
    summed over one generator of each.
    """
    if n < 1:
        raise DomainError("n must be a positive integer", n=n)
    value = 1.0 + 0.0j
    for p, e in factorint(n).items():
        if p == 2:
            value *= char_value(d, GaussInt(1, 1)) ** e
        elif p % 4 == 3:
            if e % 2:
                return 0.0
        else:
            pi = split_prime(p)
            pi_bar = pi.conj()
            local = sum(
                char_value(d, pi) ** k * char_value(d, pi_bar) ** (e - k) for k in range(e + 1)
            )
            value *= local
    return float(value.real)


def delta_coeff_lattice(d: int, n: int) -> float:
    """delta(Lambda^d, n) by scanning the lattice points of norm n (oracle)."""
    total = 0.0 + 0.0j
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        y2 = n - x * x
        y = math.isqrt(y2)
        if y * y != y2:
            continue
        for yy in {y, -y}:
            total += char_value(d, GaussInt(x, yy))
    return float((total / 4).real)


def coeff_table(d: int, up_to: int, cap: int | None = None) -> CoeffTable:
    """
    delta(Lambda^d, n) for n <= up_to by a multiplicative sieve over rational primes.

    Raises:
        CoeffCapError: up_to exceeds the table cap
    """
    cap = settings.HECKE_LAB["COEFF_TABLE_CAP"] if cap is None else cap
    if up_to > cap:
        raise CoeffCapError(f"Table of length {up_to} exceeds cap {cap}", up_to=up_to, cap=cap)
    table = _cached_table(abs(d), max(1, int(up_to)))
    # delta depends on |d| only
    return table if table.d == d else replace(table, d=d)


@lru_cache(maxsize=64)
def _cached_table(d: int, up_to: int) -> CoeffTable:
    values = np.ones(up_to + 1, dtype=np.float64)
    values[0] = 0.0
    for p in sieve.primerange(2, up_to + 1):
        max_exponent, pk = 0, p
        while pk <= up_to:
            max_exponent += 1
            pk *= p
        local = _local_factors(d, p, max_exponent)
        for k in range(1, max_exponent + 1):
            pk = p**k
            multiples = np.arange(pk, up_to + 1, pk)
            exact = multiples[(multiples // pk) % p != 0]
            values[exact] *= local[k]
    values.setflags(write=False)
    logger.debug("Sieved delta(Lambda^%d, n) for n <= %d", d, up_to)
    return CoeffTable(d=d, up_to=up_to, values=values)


def coefficients_upto(d: int, n: int, cap: int | None = None) -> np.ndarray:
    """
    A table covering at least 1..n, grown in powers of two so repeated calls share work.
    """
    size = 1 << max(6, math.ceil(math.log2(max(n, 1))))
    cap = settings.HECKE_LAB["COEFF_TABLE_CAP"] if cap is None else cap
    if n > cap:
        raise CoeffCapError(f"Table of length {n} exceeds cap {cap}", up_to=n, cap=cap)
    return coeff_table(d, min(size, cap), cap=cap).values


def jacobi_count(n: int) -> int:
    """sum over k | n of chi_4(k), the number of ideals of norm n."""
    from sympy import divisors

    total = 0
    for k in divisors(n):
        if k % 2:
            total += 1 if k % 4 == 1 else -1
    return total
