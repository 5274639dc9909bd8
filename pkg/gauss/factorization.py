"""
Factorisation into canonical Gaussian primes and ideal divisors.
"""

import logging
from functools import lru_cache
from itertools import product

from django.conf import settings
from sympy import factorint
from sympy.ntheory import sqrt_mod

from gauss.types import ONE, GaussFactorization, GaussInt, GaussLike
from shared.exceptions import ResourceCap, ZeroInput

logger = logging.getLogger(__name__)

RAMIFIED_PRIME = GaussInt(1, 1)


@lru_cache(maxsize=65536)
def split_prime(p: int) -> GaussInt:
    """Canonical Gaussian prime of norm p for a rational prime p = 1 (mod 4)."""
    from gauss.arithmetic import gcd

    root = sqrt_mod(p - 1, p)
    return gcd(GaussInt(p, 0), GaussInt(root, 1))


def _norm_cap() -> int:
    return settings.HECKE_LAB["FACTOR_NORM_CAP"]


def factorize(alpha: GaussLike, cap: int | None = None) -> GaussFactorization:
    """
    alpha = unit * prod(prime ** exponent) over canonical primes.

    The rational factorisation of N(alpha) is lifted prime by prime: 2 gives (1+i),
    p = 3 (mod 4) is inert, and p = 1 (mod 4) splits into conjugate primes whose
    exponents are found by trial division of alpha.

    Raises:
        ZeroInput: alpha is zero
        ResourceCap: N(alpha) exceeds the factorisation cap
    """
    alpha = GaussInt.coerce(alpha)
    if not alpha:
        raise ZeroInput("Cannot factorise zero")
    norm = alpha.norm()
    cap = _norm_cap() if cap is None else cap
    if norm > cap:
        raise ResourceCap(
            f"Norm {norm} exceeds factorisation cap {cap}", norm=norm, cap=cap
        )

    factors = []
    rest = alpha
    for p, e in factorint(norm).items():
        if p == 2:
            candidates = [(RAMIFIED_PRIME, e)]
        elif p % 4 == 3:
            candidates = [(GaussInt(p, 0), e // 2)]
        else:
            pi = split_prime(p)
            pi_bar = pi.conj().canonical()
            k = 0
            quotient = rest
            while k < e and pi.divides(quotient):
                quotient = quotient.exact_div(pi)
                k += 1
            candidates = [(pi, k), (pi_bar, e - k)]
        for prime, exponent in candidates:
            if exponent:
                rest = rest.exact_div(prime**exponent)
                factors.append((prime, exponent))

    if not rest.is_unit():
        raise AssertionError(f"Factorisation of {alpha} left a non-unit cofactor {rest}")
    factors.sort(key=lambda item: item[0].sort_key())
    return GaussFactorization(unit=rest, factors=tuple(factors))


def divisors_ideal(alpha: GaussLike) -> list[GaussInt]:
    """
    One canonical generator per ideal divisor of alpha, in norm-ascending order.
    """
    factorization = factorize(alpha)
    ranges = [range(e + 1) for _, e in factorization.factors]
    divisors = []
    for exponents in product(*ranges):
        value = ONE
        for (prime, _), k in zip(factorization.factors, exponents):
            value = value * prime**k
        divisors.append(value.canonical())
    divisors.sort(key=GaussInt.sort_key)
    return divisors
