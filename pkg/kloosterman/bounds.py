"""
Trivial and Weil-Estermann bounds for Kloosterman sums.
"""

import logging
from dataclasses import dataclass
from functools import reduce

from gauss.arithmetic import gcd
from gauss.multiplicative import multiplicative_suite
from gauss.types import GaussInt
from kloosterman.sums import KloostermanQuery, KloostermanResult

logger = logging.getLogger(__name__)

# Relative slack for comparing a float sum with an integer bound.
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class BoundCheck:
    trivial_ok: bool
    weil_ok: bool
    ratio_weil: float
    phi: int
    weil_bound: float
    ramanujan_ok: bool | None = None

    @property
    def passed(self) -> bool:
        return self.trivial_ok and self.weil_ok and self.ramanujan_ok is not False

    def as_record(self) -> dict:
        return {
            "trivial_ok": self.trivial_ok,
            "weil_ok": self.weil_ok,
            "ratio_weil": self.ratio_weil,
            "phi": self.phi,
            "weil_bound": self.weil_bound,
            "ramanujan_ok": self.ramanujan_ok,
        }


def common_divisor(*values: GaussInt) -> GaussInt:
    """gcd of the nonzero arguments; at least one must be nonzero."""
    return reduce(gcd, [GaussInt.coerce(v) for v in values if v])


def weil_bound(query: KloostermanQuery) -> float:
    """8 tau_2(gamma)^2 N((alpha, beta, gamma)) N(gamma), a bound for S^2."""
    suite = multiplicative_suite(query.gamma, tau_orders=(2,))
    hcf = common_divisor(query.alpha, query.beta, query.gamma)
    return 8.0 * suite.tau[2] ** 2 * hcf.norm() * query.gamma.norm()


def bound_check(query: KloostermanQuery, result: KloostermanResult) -> BoundCheck:
    """
    Compare a computed S(alpha, beta; gamma) with |S| <= phi(gamma) and the Weil-Estermann
    bound. When gamma | beta the Ramanujan magnitude |S| <= N((alpha, gamma)) is checked too.
    """
    phi = multiplicative_suite(query.gamma, tau_orders=()).phi
    value = result.value
    trivial_ok = abs(value) <= phi * (1.0 + BOUND_SLACK)

    bound = weil_bound(query)
    ratio = value * value / bound
    weil_ok = ratio <= 1.0 + BOUND_SLACK

    ramanujan_ok = None
    if query.gamma.divides(query.beta):
        magnitude = common_divisor(query.alpha, query.gamma).norm()
        ramanujan_ok = abs(value) <= magnitude * (1.0 + BOUND_SLACK) + BOUND_SLACK

    check = BoundCheck(trivial_ok, weil_ok, ratio, phi, bound, ramanujan_ok)
    if not check.passed:
        logger.warning("Bound violated for %s: %s", query.as_record(), check.as_record())
    return check
