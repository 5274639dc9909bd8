"""
The angular characters Lambda^d(alpha) = (alpha / |alpha|)^(4d).

Lambda^d is trivial on units, so it is a character on ideals; lambda^d((alpha)) is
Lambda^d of any generator.
"""

import cmath
import math

import numpy as np

from gauss.types import GaussInt, GaussLike
from shared.exceptions import ZeroInput


def quartic_angle(re, im):
    """
    4*arg(alpha) reduced to (-pi, pi], computed from the exact integer alpha^4.

    Accepts Python ints or int64 arrays.
    """
    re2 = re * re - im * im
    im2 = 2 * re * im
    re4 = re2 * re2 - im2 * im2
    im4 = 2 * re2 * im2
    if isinstance(re4, np.ndarray):
        return np.arctan2(im4.astype(np.float64), re4.astype(np.float64))
    return math.atan2(im4, re4)


def char_value(d: int, alpha: GaussLike) -> complex:
    """
    Lambda^d(alpha).

    Raises:
        ZeroInput: alpha is zero
    """
    alpha = GaussInt.coerce(alpha)
    if not alpha:
        raise ZeroInput("Lambda^d is undefined at zero")
    if d == 0:
        return 1.0 + 0.0j
    return cmath.exp(1j * d * quartic_angle(alpha.re, alpha.im))


def char_values(d: int, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Vectorised Lambda^d over int64 coordinate arrays (no zero entries)."""
    if d == 0:
        return np.ones(np.shape(re), dtype=np.complex128)
    # alpha^4 overflows int64 past |alpha| ~ 2^15, so go through floats there
    if np.max(np.abs(re), initial=0) > 20000 or np.max(np.abs(im), initial=0) > 20000:
        angle = 4.0 * np.arctan2(im.astype(np.float64), re.astype(np.float64))
    else:
        angle = quartic_angle(re.astype(np.int64), im.astype(np.int64))
    return np.exp(1j * d * angle)
