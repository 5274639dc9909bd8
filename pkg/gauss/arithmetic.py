"""
Euclidean arithmetic in Z[i]: gcd with Bezout cofactors and modular inverses.
"""

import logging

from gauss.types import ONE, ZERO, GaussInt, GaussLike
from shared.exceptions import BothZero, NotInvertible, ZeroInput

logger = logging.getLogger(__name__)


def xgcd(alpha: GaussLike, beta: GaussLike) -> tuple[GaussInt, GaussInt, GaussInt]:
    """
    Extended Euclid.

    Returns:
        (g, s, t) with s*alpha + t*beta == g. g is not normalised.
    """
    r0, r1 = GaussInt.coerce(alpha), GaussInt.coerce(beta)
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def gcd(alpha: GaussLike, beta: GaussLike) -> GaussInt:
    """Greatest common divisor, normalised to the associate with re > 0 and im >= 0."""
    alpha, beta = GaussInt.coerce(alpha), GaussInt.coerce(beta)
    if not alpha and not beta:
        raise BothZero("gcd(0, 0) is undefined")
    g, _, _ = xgcd(alpha, beta)
    return g.canonical()


def inv_mod(alpha: GaussLike, gamma: GaussLike) -> GaussInt:
    """
    Inverse of alpha modulo gamma, reduced to the canonical residue system.

    Raises:
        ZeroInput: gamma is zero
        NotInvertible: gcd(alpha, gamma) is not a unit
    """
    from gauss.lattice import reduce_mod

    alpha, gamma = GaussInt.coerce(alpha), GaussInt.coerce(gamma)
    if not gamma:
        raise ZeroInput("Modulus must be nonzero", modulus=gamma.as_pair())
    g, s, _ = xgcd(alpha, gamma)
    if not g.is_unit():
        raise NotInvertible(
            f"{alpha} is not invertible modulo {gamma}",
            alpha=alpha.as_pair(),
            modulus=gamma.as_pair(),
        )
    # s*alpha = g (mod gamma), and g^-1 = conj(g) for a unit
    return reduce_mod(s * g.conj(), gamma)
