"""
Fourier transforms on C = R^2.

f^(w) = integral over C of f(z) e(-Re(w z)) dz with e(x) = exp(2 pi i x). Radial test
functions go through the Hankel transform 2 pi int_0^R f(r) J0(2 pi |w| r) r dr; general
ones through polar quadrature, trapezoid in angle and Gauss-Legendre in radius.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

from analytic.quadrature import gauss_legendre
from analytic.smoothing import bump
from shared.exceptions import UnsupportedTestFunction

logger = logging.getLogger(__name__)

# exp(-pi r^2 / sigma0^2) < 1e-18 beyond this multiple of sigma0
GAUSSIAN_EXTENT = math.sqrt(18.0 * math.log(10.0) / math.pi)

DEFAULT_RADIAL_NODES = 256
DEFAULT_ANGULAR_NODES = 256


class TestFunction:
    """
    A shipped Schwartz-class test function on C.

    Subclasses evaluate on complex arrays, declare a radius outside of which they vanish
    to double precision and say whether they are radial.
    """

    __test__ = False

    radial = False

    def __call__(self, z):
        raise NotImplementedError

    @property
    def extent(self) -> float:
        raise NotImplementedError

    @property
    def radial_breaks(self) -> tuple[float, ...]:
        """Radii splitting [0, extent] into pieces on which f is smooth; radial f only."""
        return (0.0, self.extent)

    def hat(self, w):
        """Closed-form transform where one is known, else None."""
        return None


@dataclass(frozen=True)
class GaussianTest(TestFunction):
    """
    f(z) = exp(-pi |z - center|^2 / sigma0^2).

    f^(w) = sigma0^2 exp(-pi sigma0^2 |w|^2) e(-Re(w center)), so sigma0 = 1 is self-dual.
    """

    sigma0: float = 1.0
    center: complex = 0j

    @property
    def radial(self) -> bool:
        return self.center == 0

    @property
    def extent(self) -> float:
        return abs(self.center) + self.sigma0 * GAUSSIAN_EXTENT

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        return np.exp(-math.pi * np.abs(z - self.center) ** 2 / self.sigma0**2)

    def hat(self, w):
        w = np.asarray(w, dtype=np.complex128)
        s2 = self.sigma0**2
        value = s2 * np.exp(-math.pi * s2 * np.abs(w) ** 2)
        if self.center:
            value = value * np.exp(-2j * math.pi * (w * self.center).real)
        return value

    def laplacian(self, z):
        """Delta f = (4 c^2 r^2 - 4 c) f with c = pi / sigma0^2 and r = |z - center|."""
        z = np.asarray(z, dtype=np.complex128)
        c = math.pi / self.sigma0**2
        r2 = np.abs(z - self.center) ** 2
        return (4.0 * c * c * r2 - 4.0 * c) * np.exp(-c * r2)


@dataclass(frozen=True)
class BumpTest(TestFunction):
    """f(z) = Phi(|z| / radius), supported in the open disc of the given radius."""

    radius: float = 1.0
    radial = True

    @property
    def extent(self) -> float:
        return self.radius

    def __call__(self, z):
        return bump(np.abs(np.asarray(z, dtype=np.complex128)) / self.radius)


@dataclass(frozen=True)
class ScaledTest(TestFunction):
    """(S_a f)(z) = f(a z), the rotation-dilation of f by a nonzero complex a."""

    base: TestFunction
    a: complex

    @property
    def radial(self) -> bool:
        return self.base.radial

    @property
    def extent(self) -> float:
        return self.base.extent / abs(self.a)

    def __call__(self, z):
        return self.base(self.a * np.asarray(z, dtype=np.complex128))

    def hat(self, w):
        base_hat = self.base.hat(np.asarray(w, dtype=np.complex128) / self.a)
        return None if base_hat is None else base_hat / abs(self.a) ** 2


@dataclass(frozen=True)
class LaplacianTest(TestFunction):
    """Delta f for a Gaussian f."""

    base: GaussianTest

    @property
    def radial(self) -> bool:
        return self.base.radial

    @property
    def extent(self) -> float:
        return self.base.extent + self.base.sigma0

    def __call__(self, z):
        return self.base.laplacian(z)


def _check(f) -> TestFunction:
    if not isinstance(f, TestFunction):
        raise UnsupportedTestFunction(
            f"{type(f).__name__} is not a shipped test function", kind=type(f).__name__
        )
    if isinstance(f, LaplacianTest) and not isinstance(f.base, GaussianTest):
        raise UnsupportedTestFunction("Laplacians are only shipped for Gaussians")
    return f


def hankel_transform(f: TestFunction, rho, radial_nodes: int = DEFAULT_RADIAL_NODES, block=512):
    """
    f^ at |w| = rho for a radial f, vectorised over rho.

    Each piece between consecutive radial_breaks gets Gauss-Legendre nodes enough for the
    largest frequency of its block.
    """
    rho = np.asarray(rho, dtype=np.float64)
    flat = np.abs(rho.ravel())
    result = np.zeros(flat.shape, dtype=np.complex128)
    order = np.argsort(flat, kind="stable")
    breaks = f.radial_breaks
    for start in range(0, len(order), block):
        index = order[start : start + block]
        freq = flat[index]
        total = np.zeros(len(index), dtype=np.complex128)
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            n = max(radial_nodes, int(8.0 * freq[-1] * (hi - lo)) + 32)
            r, weights = gauss_legendre(n, lo, hi)
            profile = f(r.astype(np.complex128)) * r * weights
            total += j0(2.0 * math.pi * np.outer(freq, r)) @ profile
        result[index] = 2.0 * math.pi * total
    result = result.reshape(rho.shape)
    return complex(result) if result.ndim == 0 else result


def _hankel(f: TestFunction, w: complex, radial_nodes: int) -> complex:
    return hankel_transform(f, abs(w), radial_nodes)


def _polar(f: TestFunction, w: complex, radial_nodes: int, angular_nodes: int) -> complex:
    extent = f.extent
    oscillation = 2.0 * math.pi * abs(w) * extent
    n_r = max(radial_nodes, int(1.5 * oscillation) + 32)
    n_theta = max(angular_nodes, 2 * int(oscillation) + 64)
    r, weights = gauss_legendre(n_r, 0.0, extent)
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    z = np.outer(r, np.exp(1j * theta))
    integrand = f(z) * np.exp(-2j * math.pi * (w * z).real)
    angular = integrand.sum(axis=1) * (2.0 * math.pi / n_theta)
    return complex(np.sum(weights * r * angular))


def fourier_hat(
    f: TestFunction,
    w: complex,
    radial_nodes: int = DEFAULT_RADIAL_NODES,
    angular_nodes: int = DEFAULT_ANGULAR_NODES,
    method: str | None = None,
) -> complex:
    """
    f^(w) by quadrature.

    Args:
        f: A shipped test function
        w: Frequency
        radial_nodes: Minimum Gauss-Legendre nodes in radius
        angular_nodes: Minimum trapezoid nodes in angle
        method: "hankel" or "polar"; defaults to hankel for radial f

    Raises:
        UnsupportedTestFunction: f is not a shipped test function, or a radial method was
            requested for a non-radial f
    """
    f = _check(f)
    w = complex(w)
    method = method or ("hankel" if f.radial else "polar")
    if method == "hankel":
        if not f.radial:
            raise UnsupportedTestFunction("The Hankel transform needs a radial test function")
        return _hankel(f, w, radial_nodes)
    if method == "polar":
        return _polar(f, w, radial_nodes, angular_nodes)
    raise UnsupportedTestFunction(f"Unknown transform method '{method}'", method=method)
