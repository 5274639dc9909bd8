"""
Corpus Service for randomized Kloosterman sweeps.

Triples (alpha, beta, gamma) are drawn from the seeded "kloosterman-corpus" stream and
evaluated in parallel; every entry is checked against the trivial and Weil-Estermann
bounds. A second sweep compares the direct sum with the Ramanujan closed forms for every
modulus up to a norm bound, with multipliers drawn from the "ramanujan-alpha" stream.
"""

import logging
from dataclasses import dataclass, field

from gauss.lattice import enumerate_by_norm
from gauss.types import GaussInt
from kloosterman.bounds import bound_check
from kloosterman.sums import KloostermanQuery, kloosterman_direct, ramanujan_forms
from shared.parallel import ordered_map
from shared.rng import stream

logger = logging.getLogger(__name__)

CORPUS_FIELDS = ("alpha", "beta", "gamma", "value", "weil_ratio")

DEFAULT_NORM_MAX = 400
# alpha and beta are drawn from the square [-ENTRY_RANGE, ENTRY_RANGE]^2
ENTRY_RANGE = 50
RAMANUJAN_TOL = 1e-6


@dataclass
class CorpusReport:
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row["trivial_ok"] and row["weil_ok"] and row["real_ok"] for row in self.rows)

    def summary(self) -> dict:
        return {
            "entries": len(self.rows),
            "failures": sum(
                not (row["trivial_ok"] and row["weil_ok"] and row["real_ok"]) for row in self.rows
            ),
            "max_weil_ratio": max((row["weil_ratio"] for row in self.rows), default=0.0),
            "max_imag_leak": max((row["imag_leak"] for row in self.rows), default=0.0),
        }


@dataclass
class RamanujanReport:
    rows: list[dict] = field(default_factory=list)
    tolerance: float = RAMANUJAN_TOL

    @property
    def max_error(self) -> float:
        return max((row["abs_err"] for row in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def summary(self) -> dict:
        return {
            "moduli": len({tuple(row["gamma"]) for row in self.rows}),
            "entries": len(self.rows),
            "max_abs_err": self.max_error,
            "tolerance": self.tolerance,
        }


def _pair(value: GaussInt) -> str:
    return f"{value.re},{value.im}"


def _evaluate_triple(triple):
    query = KloostermanQuery(*(GaussInt(*pair) for pair in triple))
    result = kloosterman_direct(query)
    check = bound_check(query, result)
    return {
        "alpha": _pair(query.alpha),
        "beta": _pair(query.beta),
        "gamma": _pair(query.gamma),
        "value": result.value,
        "weil_ratio": check.ratio_weil,
        "imag_leak": result.imag_leak,
        "trivial_ok": check.trivial_ok,
        "weil_ok": check.weil_ok,
        "real_ok": result.imag_leak <= 1e-9 * query.gamma.norm(),
    }


def _compare_ramanujan(job):
    gamma_pair, alphas = job
    gamma = GaussInt(*gamma_pair)
    rows = []
    for alpha_pair in alphas:
        alpha = GaussInt(*alpha_pair)
        direct = kloosterman_direct(KloostermanQuery(alpha, 0, gamma)).value
        forms = ramanujan_forms(alpha, gamma)
        error = max(
            abs(direct - forms.divisor_sum),
            abs(direct - forms.prime_product),
            abs(direct - forms.phi_ratio),
        )
        rows.append(
            {
                "gamma": gamma.as_pair(),
                "alpha": alpha.as_pair(),
                "direct": direct,
                **forms.as_record(),
                "abs_err": error,
            }
        )
    return rows


class KloostermanCorpusService:
    """
    Service for randomized Kloosterman sweeps.

    Usage:
        triples = KloostermanCorpusService.random_triples(1000, seed=7)
        report = KloostermanCorpusService.sweep(triples, threads=4)
        report.passed
    """

    @staticmethod
    def random_triples(count: int, seed: int, norm_max: int = DEFAULT_NORM_MAX) -> list:
        """
        count triples ((a, b), (c, d), (e, f)) with 0 < N(gamma) <= norm_max.

        The moduli are drawn by rejection from the square of half-width sqrt(norm_max).
        """
        rng = stream(seed, "kloosterman-corpus")
        side = int(norm_max**0.5)
        triples = []
        while len(triples) < count:
            entries = rng.integers(-ENTRY_RANGE, ENTRY_RANGE + 1, size=4).tolist()
            gamma = rng.integers(-side, side + 1, size=2).tolist()
            norm = gamma[0] ** 2 + gamma[1] ** 2
            if norm == 0 or norm > norm_max:
                continue
            triples.append(((entries[0], entries[1]), (entries[2], entries[3]), tuple(gamma)))
        return triples

    @staticmethod
    def sweep(triples, threads=None) -> CorpusReport:
        """Evaluate and bound-check every triple, in input order."""
        rows = ordered_map(_evaluate_triple, triples, threads=threads)
        report = CorpusReport(rows)
        logger.info("Kloosterman corpus: %s", report.summary())
        return report

    @staticmethod
    def ramanujan_jobs(seed: int, norm_max: int = DEFAULT_NORM_MAX, per_gamma: int = 20) -> list:
        """(gamma, alphas) for every canonical gamma with N(gamma) <= norm_max."""
        rng = stream(seed, "ramanujan-alpha")
        jobs = []
        for gamma in enumerate_by_norm(norm_max):
            if not gamma.is_canonical():
                continue
            n = gamma.norm()
            draws = rng.integers(-n, n + 1, size=(per_gamma, 2)).tolist()
            # gamma itself gives S = phi(gamma); keep it in every batch
            alphas = [tuple(gamma.as_pair())] + [tuple(pair) for pair in draws[1:]]
            jobs.append((tuple(gamma.as_pair()), alphas))
        return jobs

    @staticmethod
    def ramanujan_sweep(
        seed: int, norm_max: int = DEFAULT_NORM_MAX, per_gamma: int = 20, threads=None
    ) -> RamanujanReport:
        """Compare the direct sum S(alpha, 0; gamma) with its three closed forms."""
        jobs = KloostermanCorpusService.ramanujan_jobs(seed, norm_max, per_gamma)
        batches = ordered_map(_compare_ramanujan, jobs, threads=threads)
        report = RamanujanReport([row for batch in batches for row in batch])
        if not report.passed:
            logger.warning("Ramanujan forms disagree: %s", report.summary())
        return report
