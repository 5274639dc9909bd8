from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre nodes and weights on [a, b]; n is rounded up to a multiple of 32."""
    n = max(32, -(-int(n) // 32) * 32)
    nodes, weights = _legendre(n)
    half = 0.5 * (b - a)
    return half * nodes + 0.5 * (a + b), half * weights


def simpson_weights(n_intervals: int, step: float) -> np.ndarray:
    """Composite Simpson weights for n_intervals (even) equal steps."""
    if n_intervals % 2:
        raise ValueError("Simpson's rule needs an even number of intervals")
    w = np.ones(n_intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * step / 3.0
