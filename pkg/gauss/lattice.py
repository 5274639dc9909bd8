"""
Lattice views of Z[i]: enumeration by norm, lattice-point counts and residue systems.
"""

import logging
import math
from functools import lru_cache
from typing import Iterator

import numpy as np
from sympy.core.intfunc import igcdex

from gauss.types import GaussInt, GaussLike, ResidueSystem
from shared.exceptions import ZeroInput

logger = logging.getLogger(__name__)


def norm_ordered_arrays(bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    All nonzero lattice points with norm <= bound as (re, im, norm) int64 arrays.

    Ordered by norm ascending, then re descending, then im ascending.
    """
    if bound < 1:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    r = math.isqrt(bound)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    norms = xs * xs + ys * ys
    keep = (norms > 0) & (norms <= bound)
    xs, ys, norms = xs[keep], ys[keep], norms[keep]
    # lexsort uses the last key as primary
    order = np.lexsort((ys, -xs, norms))
    return xs[order], ys[order], norms[order]


def enumerate_by_norm(bound: int) -> Iterator[GaussInt]:
    """Yield every alpha with 0 < N(alpha) <= bound in norm-ascending order."""
    xs, ys, _ = norm_ordered_arrays(bound)
    for x, y in zip(xs.tolist(), ys.tolist()):
        yield GaussInt(x, y)


def lattice_counts(bound: int) -> np.ndarray:
    """r2(n) for 0 <= n <= bound: the number of (x, y) in Z^2 with x^2 + y^2 = n."""
    r = math.isqrt(bound)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    squares = axis * axis
    norms = np.add.outer(squares, squares).ravel()
    return np.bincount(norms[norms <= bound], minlength=bound + 1)


@lru_cache(maxsize=4096)
def hnf_basis(gamma: GaussInt) -> tuple[int, int, int]:
    """
    Hermite normal form of the ideal gamma*Z[i] as (width, shift, height).

    The lattice is spanned by (width, 0) and (shift, height), with height = gcd(re, im)
    and width = N(gamma) / height.
    """
    a, b = gamma.re, gamma.im
    if a == 0 and b == 0:
        raise ZeroInput("Modulus must be nonzero")
    x0, y0, g = igcdex(b, a)
    if g < 0:
        x0, y0, g = -x0, -y0, -g
    # x0*gamma + y0*(i*gamma) has imaginary part b*x0 + a*y0 = g
    width = gamma.norm() // g
    shift = (a * x0 - b * y0) % width
    return width, shift, g


def reduce_with_hnf(alpha: GaussInt, hnf: tuple[int, int, int]) -> tuple[int, int]:
    width, shift, height = hnf
    q = alpha.im // height
    x = alpha.re - q * shift
    y = alpha.im - q * height
    return x % width, y


def reduce_mod(alpha: GaussLike, gamma: GaussLike) -> GaussInt:
    """Canonical representative of alpha modulo gamma."""
    gamma = GaussInt.coerce(gamma)
    x, y = reduce_with_hnf(GaussInt.coerce(alpha), hnf_basis(gamma))
    return GaussInt(x, y)


def residue_system(gamma: GaussLike) -> ResidueSystem:
    """
    Complete and reduced residue systems modulo gamma.

    Raises:
        ZeroInput: gamma is zero
    """
    from gauss.factorization import factorize

    gamma = GaussInt.coerce(gamma)
    hnf = hnf_basis(gamma)
    width, _, height = hnf
    xs = np.tile(np.arange(width, dtype=np.int64), height)
    ys = np.repeat(np.arange(height, dtype=np.int64), width)

    coprime = np.ones(xs.shape, dtype=bool)
    for prime in factorize(gamma).primes:
        p, q, n = prime.re, prime.im, prime.norm()
        # prime | z  iff  z * conj(prime) == 0 (mod N(prime)) componentwise
        divisible = ((xs * p + ys * q) % n == 0) & ((ys * p - xs * q) % n == 0)
        coprime &= ~divisible

    representatives = tuple(GaussInt(x, y) for x, y in zip(xs.tolist(), ys.tolist()))
    reduced = tuple(np.flatnonzero(coprime).tolist())
    logger.debug("Residue system mod %s: %d classes, %d reduced", gamma, len(xs), len(reduced))
    return ResidueSystem(gamma, representatives, reduced, hnf)
