"""
Smoothed mean square of Dirichlet polynomials over the characters Lambda^d.

For C supported on the annulus X^2/2 < N(xi) < 2 X^2 with C(i xi) = C(xi),

    E = 1/(2 D^2) sum_d int Upsilon(|2d + it|^2 / D^2) |sum_xi C(xi) Lambda^d(xi) N(xi)^-it|^2 dt

is compared with the near-diagonal sum over |xi1 - xi2| < QX of
C(xi1) conj C(xi2) (Upsilon o N)^((D / pi) log(xi1 / xi2)). The complete lattice form

    1/4 sum_{xi1, xi2} C(xi1) conj C(xi2) sum_g (Upsilon o N)^(|g/2 - conj a| D),
    a = log(xi1 / xi2) / (pi i),

equals E exactly and is what the direct computation is checked against.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from analytic.quadrature import gauss_legendre
from analytic.smoothing import SmoothingConfig, WEtaFamily, w_eta_family
from gauss.lattice import enumerate_by_norm
from gauss.types import GaussInt, GaussLike
from hecke.coeff_maps import CoeffMap
from hecke.series import dirichlet_poly
from kloosterman.fourier import TestFunction, hankel_transform
from shared.exceptions import DomainError, SupportError, SymmetryError
from shared.rng import stream

logger = logging.getLogger(__name__)

CUTOFFS = ("sharp", "smooth")
ANNULUS_FAMILIES = ("orbit", "random-sign", "zero")

DIRECT_NODES = 256
DEFAULT_DELTA = 1.0 / (4.0 * math.e)
LATTICE_TOL = 1e-12
CUTOFF_START = 4.0
CUTOFF_MAX = 4096.0
REL_FLOOR = 1e-300


@dataclass(frozen=True)
class UpsilonNormTest(TestFunction):
    """z -> Upsilon(|z|^2), supported in e^-eta <= |z|^2 <= e^eta."""

    family: WEtaFamily
    radial = True

    @property
    def extent(self) -> float:
        return math.exp(self.family.eta / 2.0)

    @property
    def radial_breaks(self) -> tuple[float, ...]:
        half = self.family.eta / 2.0
        return (math.exp(-half), 1.0, math.exp(half))

    def __call__(self, z):
        return self.family.upsilon(np.abs(np.asarray(z, dtype=np.complex128)) ** 2)


@dataclass(frozen=True)
class MeanSquareResult:
    D: float
    X: float
    Q: float
    cutoff: str
    delta: Optional[float]
    lhs: float
    rhs: complex
    rel_err: float
    pairs: int
    support: int
    l1: float
    lattice: Optional[complex] = None
    lattice_rel_err: Optional[float] = None
    hat_cutoff: Optional[float] = None

    def as_record(self) -> dict:
        record = {
            "D": self.D,
            "X": self.X,
            "Q": self.Q,
            "cutoff": self.cutoff,
            "delta": self.delta,
            "lhs": self.lhs,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "rel_err": self.rel_err,
            "pairs": self.pairs,
            "support": self.support,
            "l1": self.l1,
        }
        if self.lattice is not None:
            record["lattice_re"] = self.lattice.real
            record["lattice_im"] = self.lattice.imag
            record["lattice_rel_err"] = self.lattice_rel_err
            record["hat_cutoff"] = self.hat_cutoff
        return record


def relative_error(a: complex, b: complex) -> float:
    return abs(a - b) / (abs(a) + abs(b) + REL_FLOOR)


# Coefficient maps on the annulus


def annulus_bound(X: float) -> int:
    return max(1, math.ceil(2.0 * X * X))


def in_annulus(mu: GaussInt, X: float) -> bool:
    return X * X / 2.0 < mu.norm() < 2.0 * X * X


def annulus_points(X: float) -> list[GaussInt]:
    """Every xi with X^2/2 < N(xi) < 2 X^2, in norm order."""
    return [mu for mu in enumerate_by_norm(annulus_bound(X)) if in_annulus(mu, X)]


def orbit_map(xi0: GaussLike, value: complex, X: float) -> CoeffMap:
    """C = value on the four associates of xi0, zero elsewhere."""
    xi0 = GaussInt.coerce(xi0)
    return CoeffMap(
        norm_bound=annulus_bound(X),
        support={mu: complex(value) for mu in xi0.associates()},
    )


def random_sign_annulus(X: float, seed: int) -> CoeffMap:
    """Independent signs per unit orbit of the annulus, drawn from the annulus-signs stream."""
    points = annulus_points(X)
    representatives = [mu for mu in points if mu.is_canonical()]
    signs = stream(seed, "annulus-signs").choice((-1.0, 1.0), size=len(representatives))
    sign_of = dict(zip(representatives, signs.tolist()))
    return CoeffMap(
        norm_bound=annulus_bound(X),
        support={mu: complex(sign_of[mu.canonical()]) for mu in points},
    )


def build_annulus_map(family: str, X: float, seed: int = 0, xi0=None, value=1.0) -> CoeffMap:
    if family == "orbit":
        if xi0 is None:
            xi0 = annulus_points(X)[0]
        return orbit_map(xi0, value, X)
    if family == "random-sign":
        return random_sign_annulus(X, seed)
    if family == "zero":
        return CoeffMap(norm_bound=annulus_bound(X))
    raise DomainError(f"Unknown annulus family '{family}'", family=family)


def validate_annulus(coeffs: CoeffMap, X: float) -> None:
    """
    Raises:
        SupportError: a support point lies outside X^2/2 < N(xi) < 2 X^2
        SymmetryError: C(i xi) != C(xi) somewhere
    """
    for mu, value in coeffs.ordered_items():
        if value != 0 and not in_annulus(mu, X):
            raise SupportError(
                f"{mu} lies outside the annulus for X = {X}", key=mu.as_pair(), X=X
            )
    if not coeffs.is_unit_invariant():
        raise SymmetryError()


# The three sides


def _t_pieces(D: float, d: int, eta: float) -> list[tuple[float, float]]:
    """Positive-t intervals where Upsilon(|2d + it|^2 / D^2) is smooth and not identically 0."""
    edges = [D * D * math.exp(k * eta) - 4.0 * d * d for k in (-1, 0, 1)]
    if edges[2] <= 0:
        return []
    points = [math.sqrt(edges[0]) if edges[0] > 0 else 0.0]
    if edges[1] > 0 and math.sqrt(edges[1]) > points[0]:
        points.append(math.sqrt(edges[1]))
    points.append(math.sqrt(edges[2]))
    return list(zip(points[:-1], points[1:]))


def direct_side(D: float, coeffs: CoeffMap, family: WEtaFamily, nodes: int = DIRECT_NODES):
    """E computed from its definition, Gauss-Legendre in t on each smooth piece."""
    if len(coeffs) == 0:
        return 0.0
    parts = []
    d_max = int(math.exp(family.eta / 2.0) * D / 2.0) + 1
    for d in range(-d_max, d_max + 1):
        for lo, hi in _t_pieces(D, d, family.eta):
            nodes_t, weights = gauss_legendre(nodes, lo, hi)
            for t in (nodes_t, -nodes_t):
                weight = family.upsilon((4.0 * d * d + t * t) / (D * D))
                values = dirichlet_poly(coeffs, 1j * t, d)
                parts.append(float(np.sum(weights * weight * np.abs(values) ** 2)))
    return math.fsum(parts) / (2.0 * D * D)


def _support_arrays(coeffs: CoeffMap) -> tuple[np.ndarray, np.ndarray]:
    re, im, values = coeffs.arrays
    return re.astype(np.float64) + 1j * im.astype(np.float64), values


def _transform_at(test: UpsilonNormTest, rho: np.ndarray) -> np.ndarray:
    """Upsilon o N hat at each rho, transforming each distinct value once."""
    if rho.size == 0:
        return np.zeros(0, dtype=np.complex128)
    distinct, inverse = np.unique(np.round(rho, 12), return_inverse=True)
    return np.asarray(hankel_transform(test, distinct))[inverse]


def near_diagonal_side(
    D: float,
    coeffs: CoeffMap,
    X: float,
    Q: float,
    test: UpsilonNormTest,
    cutoff: str = "sharp",
    delta: float = DEFAULT_DELTA,
) -> tuple[complex, int]:
    """
    The near-diagonal sum with weight 1 on |xi1 - xi2| < QX ("sharp"), or with
    W_eta(|xi1 - xi2|^2 / (delta X^2)) ("smooth").

    Returns:
        (value, number of contributing pairs)
    """
    if len(coeffs) == 0:
        return 0j, 0
    xi, values = _support_arrays(coeffs)
    gap = np.abs(xi[:, None] - xi[None, :])
    if cutoff == "sharp":
        weight = (gap < Q * X).astype(np.float64)
    else:
        weight = np.asarray(test.family.w(gap**2 / (delta * X * X)), dtype=np.float64)
    first, second = np.nonzero(weight)
    rho = (D / math.pi) * np.abs(np.log(xi[first] / xi[second]))
    hat = _transform_at(test, rho)
    terms = weight[first, second] * values[first] * np.conj(values[second]) * hat
    return complex(np.sum(terms)), len(first)


def transform_cutoff(test: UpsilonNormTest, tol: float = LATTICE_TOL) -> float:
    """Smallest rho in 4, 8, 16, ... past which |(Upsilon o N)^| stays below tol times its peak."""
    peak = abs(hankel_transform(test, 0.0))
    window = np.linspace(0.0, 2.0, 17)
    rho = CUTOFF_START
    while rho < CUTOFF_MAX:
        if np.max(np.abs(hankel_transform(test, rho + window))) <= tol * peak:
            return rho
        rho *= 2.0
    logger.warning("Transform of Upsilon o N still above %.1e at rho = %g", tol, CUTOFF_MAX)
    return CUTOFF_MAX


def lattice_side(
    D: float, coeffs: CoeffMap, test: UpsilonNormTest, tol: float = LATTICE_TOL
) -> tuple[complex, float]:
    """
    The complete Poisson form of E; needs C(i xi) = C(xi).

    Pairs (xi1, xi2) and (i xi1, i xi2) contribute equally, so xi1 runs over the quadrant
    re > 0, im >= 0 and the factor 1/4 cancels.

    Returns:
        (value, transform cutoff used)
    """
    rho_cut = transform_cutoff(test, tol)
    if len(coeffs) == 0:
        return 0j, rho_cut
    xi, values = _support_arrays(coeffs)
    quadrant = (xi.real > 0) & (xi.imag >= 0)
    ratio = np.log(xi[quadrant][:, None] / xi[None, :])
    shift = (ratio.imag / math.pi).ravel()
    height = (ratio.real / math.pi).ravel()
    weight = (values[quadrant][:, None] * np.conj(values)[None, :]).ravel()

    reach = math.ceil(2.0 + 2.0 * rho_cut / D)
    g = np.arange(-reach, reach + 1, dtype=np.float64)
    rho = D * np.sqrt((g[None, :] / 2.0 - shift[:, None]) ** 2 + height[:, None] ** 2)
    pair, _ = np.nonzero(rho <= rho_cut)
    kept = rho[rho <= rho_cut]
    hat = _transform_at(test, kept)
    total = complex(np.sum(weight[pair] * hat))
    logger.debug(
        "Lattice side: %d pairs, %d transform terms, cutoff rho = %g",
        len(weight),
        len(kept),
        rho_cut,
    )
    return total, rho_cut


def smoothed_mean_square(
    D: float,
    coeffs: CoeffMap,
    X: float,
    Q: float = 0.5,
    smoothing: Optional[SmoothingConfig] = None,
    cutoff: str = "sharp",
    delta: float = DEFAULT_DELTA,
    lattice: bool = False,
    nodes: int = DIRECT_NODES,
) -> MeanSquareResult:
    """
    Compare the smoothed mean square with its near-diagonal approximation.

    Args:
        D: Scale of the character and height ranges
        coeffs: C on the annulus of X
        X: Annulus radius
        Q: Near-diagonal radius factor in (0, 1/2]
        smoothing: Parameters of Upsilon (eta)
        cutoff: "sharp" for |xi1 - xi2| < QX, "smooth" for the W_eta weight with delta
        delta: Width of the smooth cutoff, 0 < delta <= 1/(4e)
        lattice: Also compute the complete lattice form

    Returns:
        MeanSquareResult

    Raises:
        DomainError: invalid D, X, Q, delta or cutoff
        SupportError, SymmetryError: C violates the annulus hypotheses
    """
    if D <= 0 or X <= 0:
        raise DomainError("D and X must be positive", D=D, X=X)
    if not 0 < Q <= 0.5:
        raise DomainError("Q must lie in (0, 1/2]", Q=Q)
    if cutoff not in CUTOFFS:
        raise DomainError(f"Unknown cutoff '{cutoff}'", cutoff=cutoff)
    if cutoff == "smooth" and not 0 < delta <= DEFAULT_DELTA:
        raise DomainError("delta must lie in (0, 1/(4e)]", delta=delta)
    validate_annulus(coeffs, X)

    family = w_eta_family(smoothing)
    test = UpsilonNormTest(family)
    lhs = direct_side(D, coeffs, family, nodes)
    rhs, pairs = near_diagonal_side(D, coeffs, X, Q, test, cutoff, delta)
    result = {
        "D": D,
        "X": X,
        "Q": Q,
        "cutoff": cutoff,
        "delta": delta if cutoff == "smooth" else None,
        "lhs": lhs,
        "rhs": rhs,
        "rel_err": relative_error(lhs, rhs),
        "pairs": pairs,
        "support": len(coeffs),
        "l1": coeffs.l1(),
    }
    if lattice:
        value, rho_cut = lattice_side(D, coeffs, test)
        result.update(
            lattice=value, lattice_rel_err=relative_error(lhs, value), hat_cutoff=rho_cut
        )
    logger.info(
        "Smoothed mean square D=%g X=%g Q=%g: lhs=%.10g rhs=%.10g relErr=%.3e",
        D,
        X,
        Q,
        lhs,
        rhs.real,
        result["rel_err"],
    )
    return MeanSquareResult(**result)
