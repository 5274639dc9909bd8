"""
Numerical verification of Poisson summation over Z[i].

Three identities are checked for a test function f:

- plain:        sum_nu f(nu) e(Re(tau nu)) = sum_xi f^(xi - tau)
- progression:  sum_{nu = alpha mod gamma} f(nu)
                = N(gamma)^-1 sum_xi f^(xi / gamma) e(Re(alpha xi / gamma))
- twist:        sum_{(nu, gamma) = 1} f(nu) e(Re(alpha nu* / gamma))
                = N(gamma)^-1 sum_xi f^(xi / gamma) S(alpha, xi; gamma)

The test function is a Gaussian of scale sigma0 or a compactly supported bump of a given
radius. The right-hand side takes f^ in closed form (Gaussians only) or from the numerical
Hankel and polar transforms. Both sides are lattice sums truncated where f and f^ fall
below TAIL_CUTOFF.
"""


import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from gauss.lattice import residue_system
from gauss.types import GaussInt, GaussLike
from kloosterman.fourier import (
    BumpTest,
    GaussianTest,
    TestFunction,
    fourier_hat,
    hankel_transform,
)
from kloosterman.sums import KloostermanQuery, kloosterman_direct
from shared.exceptions import DomainError

logger = logging.getLogger(__name__)

VARIANTS = ("plain", "progression", "twist")
TEST_FUNCTIONS = ("gaussian", "bump")
TRANSFORMS = ("closed", "numeric")

TAIL_CUTOFF = 1e-16
DEFAULT_TOLERANCE = 1e-9

# |bump^(w)| falls like exp(-sqrt(2 pi radius |w|)) up to a power of |w|
BUMP_TAIL_EXPONENT = 30.0


@dataclass(frozen=True)
class PoissonCase:
    variant: str
    sigma0: float = 1.0
    tau: complex = 0j
    alpha: tuple[int, int] = (0, 0)
    gamma: tuple[int, int] = (1, 0)
    test: str = "gaussian"
    radius: float = 2.5
    transform: str = "closed"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"Unknown Poisson variant '{self.variant}'", variant=self.variant)
        if self.test not in TEST_FUNCTIONS:
            raise DomainError(f"Unknown test function '{self.test}'", test=self.test)
        if self.transform not in TRANSFORMS:
            raise DomainError(f"Unknown transform '{self.transform}'", transform=self.transform)
        if self.sigma0 <= 0 or self.radius <= 0:
            raise DomainError(
                "sigma0 and radius must be positive", sigma0=self.sigma0, radius=self.radius
            )
        if self.test == "bump" and self.transform == "closed":
            raise DomainError("The bump has no closed-form transform; use the numeric one")
        if not GaussInt.coerce(tuple(self.gamma)):
            raise DomainError("gamma must be nonzero")

    def test_function(self) -> TestFunction:
        if self.test == "bump":
            return BumpTest(radius=self.radius)
        return GaussianTest(sigma0=self.sigma0)

    def as_record(self) -> dict:
        record = {"variant": self.variant, "test": self.test, "transform": self.transform}
        if self.test == "bump":
            record["radius"] = self.radius
        else:
            record["sigma0"] = self.sigma0
        if self.variant == "plain":
            record.update(tau_re=self.tau.real, tau_im=self.tau.imag)
        else:
            record.update(alpha=list(self.alpha), gamma=list(self.gamma))
        return record

@dataclass
class PoissonCheck:
    case: PoissonCase
    lhs: complex
    rhs: complex
    tolerance: float = DEFAULT_TOLERANCE
    terms: dict = field(default_factory=dict)

    @property
    def abs_err(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.abs_err <= self.tolerance

    def as_record(self) -> dict:
        return {
            **self.case.as_record(),
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "abs_err": self.abs_err,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "terms": self.terms,
        }


DEFAULT_MATRIX = (
    PoissonCase("plain"),
    PoissonCase("plain", sigma0=0.7, tau=0.3 + 0.1j),
    PoissonCase("plain", sigma0=1.5, tau=0.5 - 0.25j),
    PoissonCase("progression", alpha=(0, 0), gamma=(1, 1)),
    PoissonCase("progression", sigma0=1.3, alpha=(1, 1), gamma=(2, 1)),
    PoissonCase("progression", sigma0=0.8, alpha=(0, 2), gamma=(3, 0)),
    PoissonCase("twist", alpha=(1, 0), gamma=(3, 0)),
    PoissonCase("twist", sigma0=1.2, alpha=(2, 0), gamma=(1, 2)),
    PoissonCase("twist", sigma0=0.9, alpha=(1, 1), gamma=(2, 0)),
)


def truncation_radius(scale: float) -> int:
    """Smallest R with exp(-pi R^2 / scale^2) below TAIL_CUTOFF, plus a margin."""
    return math.ceil(scale * math.sqrt(-math.log(TAIL_CUTOFF) / math.pi)) + 2


def lattice_box(radius: int, center: complex = 0j) -> tuple[np.ndarray, np.ndarray]:
    """Integer points of the square of half-width radius around the nearest lattice point."""
    cx, cy = round(center.real), round(center.imag)
    xs = np.arange(cx - radius, cx + radius + 1, dtype=np.int64)
    ys = np.arange(cy - radius, cy + radius + 1, dtype=np.int64)
    re, im = np.meshgrid(xs, ys, indexing="ij")
    return re.ravel(), im.ravel()




def _fsum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def support_radius(f: TestFunction) -> int:
    """Half-width of the box outside of which f is below TAIL_CUTOFF."""
    if isinstance(f, GaussianTest):
        return truncation_radius(f.sigma0)
    return math.ceil(f.extent) + 1


def hat_radius(f: TestFunction, scale: float = 1.0) -> int:
    """Half-width of the box outside of which f^(xi / scale) is negligible."""
    if isinstance(f, GaussianTest):
        # f^(xi / gamma) decays like exp(-pi sigma0^2 N(xi) / N(gamma))
        return truncation_radius(scale / f.sigma0)
    return math.ceil(scale * BUMP_TAIL_EXPONENT**2 / (2.0 * math.pi * f.extent)) + 2


def transform_of(f: TestFunction, transform: str):
    """f^ on arrays of frequencies, in closed form or by quadrature."""
    if transform == "closed":
        return f.hat
    if f.radial:
        return lambda w: hankel_transform(f, np.abs(w))
    return lambda w: np.array([fourier_hat(f, point) for point in np.ravel(w)])


def _plain(f: TestFunction, hat, tau: complex) -> tuple[complex, complex, dict]:
    re, im = lattice_box(support_radius(f))
    nu = re + 1j * im
    lhs = _fsum(f(nu) * np.exp(2j * math.pi * (tau * nu).real))

    re, im = lattice_box(hat_radius(f), center=tau)
    xi = re + 1j * im
    rhs = _fsum(hat(xi - tau))
    return lhs, rhs, {"lhs": len(nu), "rhs": len(xi)}


def _progression(f: TestFunction, hat, alpha: GaussInt, gamma: GaussInt):
    n = gamma.norm()
    re, im = lattice_box(support_radius(f))
    # gamma | (nu - alpha)  iff  (nu - alpha) conj(gamma) = 0 componentwise mod N(gamma)
    dr, di = re - alpha.re, im - alpha.im
    member = ((dr * gamma.re + di * gamma.im) % n == 0) & (
        (di * gamma.re - dr * gamma.im) % n == 0
    )
    nu = re[member] + 1j * im[member]
    lhs = _fsum(f(nu))

    re, im = lattice_box(hat_radius(f, math.sqrt(n)))
    xi = (re + 1j * im) / complex(gamma)
    # Re(alpha xi / gamma) = Re(alpha xi conj(gamma)) / N(gamma), exactly
    numerators = (
        (alpha.re * re - alpha.im * im) * gamma.re + (alpha.re * im + alpha.im * re) * gamma.im
    ) % n
    phases = np.exp(2j * math.pi * numerators / n)
    rhs = _fsum(hat(xi) * phases) / n
    return lhs, rhs, {"lhs": len(nu), "rhs": len(xi)}


def _twist(f: TestFunction, hat, alpha: GaussInt, gamma: GaussInt):
    n = gamma.norm()
    system = residue_system(gamma)
    inverse_of = dict(zip(system.reduced, system.inverses))

    re, im = lattice_box(support_radius(f))
    values = []
    for x, y in zip(re.tolist(), im.tolist()):
        inverse = inverse_of.get(system.index_of(GaussInt(x, y)))
        if inverse is None:
            continue
        # Re(alpha nu* conj(gamma)) mod N(gamma)
        z = alpha * inverse * gamma.conj()
        values.append(complex(f(complex(x, y))) * cmath.exp(2j * math.pi * (z.re % n) / n))
    lhs = _fsum(np.array(values, dtype=np.complex128))

    # S(alpha, xi; gamma) depends on xi mod gamma only
    memo: dict[int, float] = {}
    re, im = lattice_box(hat_radius(f, math.sqrt(n)))
    sums = np.empty(len(re), dtype=np.float64)
    for k, (x, y) in enumerate(zip(re.tolist(), im.tolist())):
        index = system.index_of(GaussInt(x, y))
        if index not in memo:
            query = KloostermanQuery(alpha, system.representatives[index], gamma)
            memo[index] = kloosterman_direct(query).value
        sums[k] = memo[index]
    rhs = _fsum(hat((re + 1j * im) / complex(gamma)) * sums) / n
    return lhs, rhs, {"lhs": len(values), "rhs": len(sums), "kloosterman_sums": len(memo)}


def poisson_verify(case: PoissonCase, tolerance: float = DEFAULT_TOLERANCE) -> PoissonCheck:
    """
    Both sides of one Poisson summation identity and their mismatch.

    Args:
        case: Variant, test function, transform and parameters
        tolerance: Largest accepted |lhs - rhs|

    Returns:
        PoissonCheck
    """
    f = case.test_function()
    hat = transform_of(f, case.transform)
    if case.variant == "plain":
        lhs, rhs, terms = _plain(f, hat, complex(case.tau))
    else:
        alpha = GaussInt.coerce(tuple(case.alpha))
        gamma = GaussInt.coerce(tuple(case.gamma))
        handler = _progression if case.variant == "progression" else _twist
        lhs, rhs, terms = handler(f, hat, alpha, gamma)
    check = PoissonCheck(case, lhs, rhs, tolerance, terms)
    if not check.passed:
        logger.warning("Poisson %s mismatch %.3e for %s", case.variant, check.abs_err, case)
    else:
        logger.debug("Poisson %s: |lhs - rhs| = %.3e", case.variant, check.abs_err)
    return check


def verify_matrix(
    cases=DEFAULT_MATRIX, variant: str | None = None, tolerance: float = DEFAULT_TOLERANCE
) -> list[PoissonCheck]:
    """Run every case, or those of one variant."""
    return [
        poisson_verify(case, tolerance) for case in cases if variant in (None, case.variant)
    ]


def case_from_options(
    variant: str,
    sigma0: float,
    tau: complex,
    alpha: GaussLike,
    gamma: GaussLike,
    test: str = "gaussian",
    radius: float = 2.5,
    transform: str | None = None,
) -> PoissonCase:
    """A single case; the transform defaults to closed form for Gaussians, numeric otherwise."""
    alpha, gamma = GaussInt.coerce(alpha), GaussInt.coerce(gamma)
    if transform is None:
        transform = "closed" if test == "gaussian" else "numeric"
    return PoissonCase(
        variant,
        sigma0,
        complex(tau),
        tuple(alpha.as_pair()),
        tuple(gamma.as_pair()),
        test=test,
        radius=radius,
        transform=transform,
    )
