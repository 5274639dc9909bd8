"""
Multiplicative functions on Z[i].
"""

from dataclasses import dataclass, field
from math import comb

from gauss.factorization import factorize
from gauss.types import GaussInt, GaussLike

DEFAULT_TAU_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class MultiplicativeSuite:
    """Values of phi, mu, omega and the element divisor functions tau_j at one gamma."""

    gamma: GaussInt
    phi: int
    mu: int
    omega: int
    tau: dict[int, int] = field(default_factory=dict)

    def as_record(self) -> dict:
        return {
            "gamma": self.gamma.as_pair(),
            "phi": self.phi,
            "mu": self.mu,
            "omega": self.omega,
            "tau": {str(j): v for j, v in sorted(self.tau.items())},
        }


def _tau_from_exponents(exponents, j: int) -> int:
    # the first j-1 entries of a tuple may each absorb any of the four units
    value = 4 ** (j - 1)
    for e in exponents:
        value *= comb(e + j - 1, j - 1)
    return value


def tau(gamma: GaussLike, j: int) -> int:
    """Number of ordered j-tuples of Gaussian integers with product gamma."""
    if j < 1:
        raise ValueError("tau order must be at least 1")
    return _tau_from_exponents([e for _, e in factorize(gamma).factors], j)


def multiplicative_suite(
    gamma: GaussLike, tau_orders: tuple[int, ...] = DEFAULT_TAU_ORDERS
) -> MultiplicativeSuite:
    """
    phi(gamma), mu(gamma), omega(gamma) and tau_j(gamma) from one factorisation.

    Raises:
        ZeroInput: gamma is zero
    """
    gamma = GaussInt.coerce(gamma)
    factors = factorize(gamma).factors
    exponents = [e for _, e in factors]

    phi = 1
    for prime, e in factors:
        n = prime.norm()
        phi *= n ** (e - 1) * (n - 1)
    mu = 0 if any(e > 1 for e in exponents) else (-1) ** len(factors)

    return MultiplicativeSuite(
        gamma=gamma,
        phi=phi,
        mu=mu,
        omega=len(factors),
        tau={j: _tau_from_exponents(exponents, j) for j in tau_orders},
    )
