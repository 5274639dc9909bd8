"""
Finitely supported coefficient maps on Z[i] and the shipped families used by experiments.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from gauss.lattice import norm_ordered_arrays
from gauss.types import GaussInt, GaussLike
from shared.exceptions import DomainError
from shared.rng import stream

logger = logging.getLogger(__name__)

FAMILIES = ("unit", "random-phase", "random-sign", "zero")


@dataclass(frozen=True)
class CoeffMap:
    """
    A(mu) for 0 < N(mu) <= norm_bound; absent keys are zero.

    Iteration is in norm-ascending order, ties broken by re descending then im ascending.
    """

    norm_bound: int
    support: dict[GaussInt, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.norm_bound < 1:
            raise DomainError("norm bound must be at least 1", norm_bound=self.norm_bound)
        for mu in self.support:
            if not 0 < mu.norm() <= self.norm_bound:
                raise DomainError(
                    f"{mu} lies outside 0 < N(mu) <= {self.norm_bound}",
                    key=mu.as_pair(),
                    norm_bound=self.norm_bound,
                )

    @classmethod
    def from_items(cls, norm_bound: int, items) -> "CoeffMap":
        support = {}
        for key, value in items:
            support[GaussInt.coerce(key)] = complex(value)
        return cls(norm_bound=norm_bound, support=support)

    def __len__(self) -> int:
        return len(self.support)

    def __getitem__(self, key: GaussLike) -> complex:
        return self.support.get(GaussInt.coerce(key), 0j)

    def ordered_items(self) -> list[tuple[GaussInt, complex]]:
        return sorted(self.support.items(), key=lambda kv: (kv[0].norm(), -kv[0].re, kv[0].im))

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(re, im, value) arrays in iteration order."""
        items = self.ordered_items()
        re = np.array([mu.re for mu, _ in items], dtype=np.int64)
        im = np.array([mu.im for mu, _ in items], dtype=np.int64)
        values = np.array([a for _, a in items], dtype=np.complex128)
        return re, im, values

    # Norms

    def l2_squared(self) -> float:
        return float(sum(abs(a) ** 2 for _, a in self.ordered_items()))

    def sup_squared(self) -> float:
        return max((abs(a) ** 2 for a in self.support.values()), default=0.0)

    def l1(self) -> float:
        return float(sum(abs(a) for _, a in self.ordered_items()))

    def is_unit_invariant(self) -> bool:
        """True when A(i*mu) == A(mu) for every key."""
        return all(self[mu.times_i()] == a for mu, a in self.support.items())

    def as_records(self) -> list[dict]:
        return [
            {"re": mu.re, "im": mu.im, "a_re": a.real, "a_im": a.imag}
            for mu, a in self.ordered_items()
        ]


def unit_map(norm_bound: int) -> CoeffMap:
    """A = 1 on every mu with 0 < N(mu) <= norm_bound."""
    re, im, _ = norm_ordered_arrays(norm_bound)
    return CoeffMap(
        norm_bound=norm_bound,
        support={GaussInt(x, y): 1 + 0j for x, y in zip(re.tolist(), im.tolist())},
    )


def random_phase_map(norm_bound: int, seed: int) -> CoeffMap:
    """Independent uniform phases e^(i theta), drawn from the coeff-map stream."""
    re, im, _ = norm_ordered_arrays(norm_bound)
    phases = stream(seed, "coeff-map").uniform(0.0, 2.0 * math.pi, size=len(re))
    return CoeffMap(
        norm_bound=norm_bound,
        support={
            GaussInt(x, y): complex(np.exp(1j * t))
            for x, y, t in zip(re.tolist(), im.tolist(), phases.tolist())
        },
    )


def random_sign_map(norm_bound: int, seed: int) -> CoeffMap:
    """Uniform +-1 signs, drawn from the coeff-map stream."""
    re, im, _ = norm_ordered_arrays(norm_bound)
    signs = stream(seed, "coeff-map").choice((-1.0, 1.0), size=len(re))
    return CoeffMap(
        norm_bound=norm_bound,
        support={
            GaussInt(x, y): complex(s) for x, y, s in zip(re.tolist(), im.tolist(), signs.tolist())
        },
    )


def build_family(family: str, norm_bound: int, seed: int = 0) -> CoeffMap:
    """Construct one of the shipped families by name."""
    if family == "unit":
        return unit_map(norm_bound)
    if family == "random-phase":
        return random_phase_map(norm_bound, seed)
    if family == "random-sign":
        return random_sign_map(norm_bound, seed)
    if family == "zero":
        return CoeffMap(norm_bound=norm_bound)
    raise DomainError(f"Unknown coefficient family '{family}'", family=family)
