"""
Kloosterman sums over Z[i].

S(alpha, beta; gamma) is the sum over reduced residues delta mod gamma of
e(Re((alpha delta* + beta delta) / gamma)), with e(x) = exp(2 pi i x) and delta* the
inverse of delta mod gamma. Phases are carried as exact integer numerators modulo N(gamma),
so the only floating point step is one cosine and one sine per term.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from django.conf import settings

from gauss.arithmetic import gcd
from gauss.factorization import divisors_ideal, factorize
from gauss.lattice import reduce_mod, residue_system
from gauss.multiplicative import multiplicative_suite
from gauss.types import GaussInt, GaussLike
from shared.exceptions import CapExceeded, DomainError, ZeroModulus

logger = logging.getLogger(__name__)

METHODS = ("direct", "ramanujan")

# Realness is checked against IMAG_LEAK_TOL * N(gamma).
IMAG_LEAK_TOL = 1e-9


@dataclass(frozen=True)
class KloostermanQuery:
    """The triple (alpha, beta, gamma) of S(alpha, beta; gamma)."""

    alpha: GaussInt
    beta: GaussInt
    gamma: GaussInt

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, GaussInt.coerce(getattr(self, name)))
        if not self.gamma:
            raise ZeroModulus("Kloosterman modulus gamma must be nonzero")

    def swapped(self) -> "KloostermanQuery":
        return KloostermanQuery(self.beta, self.alpha, self.gamma)

    def as_record(self) -> dict:
        return {
            "alpha": self.alpha.as_pair(),
            "beta": self.beta.as_pair(),
            "gamma": self.gamma.as_pair(),
        }


@dataclass(frozen=True)
class KloostermanResult:
    value: float
    imag_leak: float
    method: str
    terms: int

    def as_record(self) -> dict:
        return {
            "value": self.value,
            "imag_leak": self.imag_leak,
            "method": self.method,
            "terms": self.terms,
        }


@dataclass(frozen=True)
class RamanujanForms:
    """The three closed forms of S(alpha, 0; gamma), computed independently."""

    divisor_sum: int
    prime_product: float
    phi_ratio: float

    def spread(self) -> float:
        values = (float(self.divisor_sum), self.prime_product, self.phi_ratio)
        return max(values) - min(values)

    def as_record(self) -> dict:
        return {
            "divisor_sum": self.divisor_sum,
            "prime_product": self.prime_product,
            "phi_ratio": self.phi_ratio,
        }


def _direct_cap() -> int:
    return settings.HECKE_LAB["DIRECT_KLOOSTERMAN_CAP"]


@lru_cache(maxsize=512)
def reduced_residue_arrays(gamma: GaussInt) -> tuple[np.ndarray, np.ndarray]:
    """
    Reduced residues delta mod gamma and their inverses delta*, as (phi, 2) int64 arrays.

    Rows are aligned; the arrays are read-only and shared between callers.
    """
    system = residue_system(gamma)
    deltas = np.array([d.as_pair() for d in system.reduced_elements()], dtype=np.int64)
    inverses = np.array([d.as_pair() for d in system.inverses], dtype=np.int64)
    deltas = deltas.reshape(-1, 2)
    inverses = inverses.reshape(-1, 2)
    deltas.setflags(write=False)
    inverses.setflags(write=False)
    return deltas, inverses


def phase_numerators(query: KloostermanQuery) -> np.ndarray:
    """
    Re((alpha delta* + beta delta) conj(gamma)) mod N(gamma) for every reduced delta.

    The phase of each term of S is this numerator divided by N(gamma).
    """
    gamma = query.gamma
    n = gamma.norm()
    a = reduce_mod(query.alpha, gamma)
    b = reduce_mod(query.beta, gamma)
    deltas, inverses = reduced_residue_arrays(gamma)
    dr, di = deltas[:, 0], deltas[:, 1]
    sr, si = inverses[:, 0], inverses[:, 1]
    zr = (a.re * sr - a.im * si + b.re * dr - b.im * di) % n
    zi = (a.re * si + a.im * sr + b.re * di + b.im * dr) % n
    return (zr * gamma.re + zi * gamma.im) % n


def phases_to_sum(numerators: np.ndarray, n: int) -> complex:
    """sum e(k / n) over integer numerators k."""
    angles = (2.0 * math.pi / n) * numerators.astype(np.float64)
    return complex(math.fsum(np.cos(angles)), math.fsum(np.sin(angles)))


def kloosterman_direct(query: KloostermanQuery, cap: int | None = None) -> KloostermanResult:
    """
    S(alpha, beta; gamma) by summing over the reduced residue system.

    Args:
        query: The triple (alpha, beta, gamma)
        cap: Largest admissible N(gamma) (defaults to HECKE_LAB["DIRECT_KLOOSTERMAN_CAP"])

    Returns:
        KloostermanResult with method "direct"

    Raises:
        CapExceeded: N(gamma) is above the cap
    """
    n = query.gamma.norm()
    cap = _direct_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(
            f"N(gamma) = {n} exceeds the direct Kloosterman cap {cap}", norm=n, cap=cap
        )
    numerators = phase_numerators(query)
    total = phases_to_sum(numerators, n)
    leak = abs(total.imag)
    if leak > IMAG_LEAK_TOL * n:
        logger.warning("Kloosterman sum %s has imaginary part %.3e", query.as_record(), leak)
    return KloostermanResult(total.real, leak, "direct", len(numerators))


def mobius(kappa: GaussLike) -> int:
    return multiplicative_suite(kappa, tau_orders=()).mu


def ramanujan_eval(alpha: GaussLike, gamma: GaussLike) -> KloostermanResult:
    """
    S(alpha, 0; gamma) as the sum over ideal divisors nu of (alpha, gamma) of
    mu(gamma / nu) N(nu).

    Raises:
        ZeroModulus: gamma is zero
    """
    alpha, gamma = GaussInt.coerce(alpha), GaussInt.coerce(gamma)
    if not gamma:
        raise ZeroModulus("Ramanujan sum modulus must be nonzero")
    divisors = divisors_ideal(gcd(alpha, gamma))
    value = sum(mobius(gamma.exact_div(nu)) * nu.norm() for nu in divisors)
    return KloostermanResult(float(value), 0.0, "ramanujan", len(divisors))


def ramanujan_forms(alpha: GaussLike, gamma: GaussLike) -> RamanujanForms:
    """
    Divisor sum, prime product and phi ratio forms of S(alpha, 0; gamma).

    With g = (alpha, gamma) and kappa = gamma / g the last two are
    mu(kappa) N(g) prod(1 - 1/N(pi)) over primes pi | g with pi not dividing kappa, and
    mu(kappa) phi(gamma) / phi(kappa).
    """
    alpha, gamma = GaussInt.coerce(alpha), GaussInt.coerce(gamma)
    if not gamma:
        raise ZeroModulus("Ramanujan sum modulus must be nonzero")
    g = gcd(alpha, gamma)
    kappa = gamma.exact_div(g)
    mu_kappa = mobius(kappa)

    product = float(mu_kappa * g.norm())
    for prime in factorize(g).primes:
        if not prime.divides(kappa):
            product *= 1.0 - 1.0 / prime.norm()

    phi_ratio = mu_kappa * multiplicative_suite(gamma).phi / multiplicative_suite(kappa).phi
    return RamanujanForms(
        divisor_sum=int(ramanujan_eval(alpha, gamma).value),
        prime_product=product,
        phi_ratio=float(phi_ratio),
    )


def ramanujan_route(query: KloostermanQuery) -> KloostermanResult:
    """
    Closed-form evaluation when gamma divides beta, or alpha by the symmetry of S.

    Raises:
        DomainError: gamma divides neither argument
    """
    if query.gamma.divides(query.beta):
        return ramanujan_eval(query.alpha, query.gamma)
    if query.gamma.divides(query.alpha):
        return ramanujan_eval(query.beta, query.gamma)
    raise DomainError(
        "The Ramanujan evaluation needs gamma to divide alpha or beta", **query.as_record()
    )


def evaluate(query: KloostermanQuery, method: str = "direct") -> KloostermanResult:
    if method == "direct":
        return kloosterman_direct(query)
    if method == "ramanujan":
        return ramanujan_route(query)
    raise DomainError(f"Unknown Kloosterman method '{method}'", method=method)
