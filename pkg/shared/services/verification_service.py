"""
Verification Service for the invariant suite behind `manage.py verify all`.

Each check reports the worst discrepancy it observed against a declared tolerance from
shared.constants.VERIFY_TOLERANCES. Checks run in a fixed order and report no timings,
so two runs with the same seed produce identical reports.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from analytic.conductor import conductor, gamma_factor
from analytic.mellin import mellin_inverse, mellin_r
from analytic.smoothing import SmoothingConfig, rho, rho_k, w_eta_family
from gauss.lattice import lattice_counts
from hecke.coefficients import coeff_table
from kloosterman.poisson import verify_matrix
from kloosterman.services import KloostermanCorpusService
from moments.mean_square import build_annulus_map, smoothed_mean_square
from moments.services import MomentService
from shared.constants import C0, VERIFY_TOLERANCES
from shared.exceptions import LabError
from zeta.afe import afe_eval
from zeta.config import AfeConfig
from zeta.diagnostics import fe_residual
from zeta.oracle import zeta_d0_oracle

logger = logging.getLogger(__name__)

VERIFY_FIELDS = ("check", "passed", "value", "tolerance")

JACOBI_N = 100_000
LATTICE_N = 10_000
BOUND_N = 10_000
BOUND_MAX_D = 10
UNITARITY_MAX_D = 50
CORPUS_SIZE = 1000
RAMANUJAN_NORM_MAX = 400
MOMENT_THREAD_D = 2.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def as_row(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "value": self.value,
            "tolerance": self.tolerance,
        }

    def as_record(self) -> dict:
        return {**self.as_row(), "detail": self.detail}


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    @property
    def rows(self) -> list[dict]:
        return [check.as_row() for check in self.checks]

    def as_record(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [check.as_record() for check in self.checks],
            "failures": self.failures,
        }


def _check(name: str, value: float, **detail) -> CheckResult:
    return CheckResult(name, float(value), VERIFY_TOLERANCES[name], detail)


# Dirichlet coefficients


def _chi4_divisor_sums(n: int) -> np.ndarray:
    """sum_{k | m} chi_4(k) for 0 <= m <= n by a sieve over odd k."""
    counts = np.zeros(n + 1, dtype=np.int64)
    for k in range(1, n + 1, 2):
        counts[k::k] += 1 if k % 4 == 1 else -1
    counts[0] = 0
    return counts


def check_jacobi(**_) -> list[CheckResult]:
    counts = _chi4_divisor_sums(JACOBI_N)
    table = coeff_table(0, JACOBI_N).values
    sieve_err = float(np.max(np.abs(table[1:] - counts[1:])))
    raw = lattice_counts(LATTICE_N)
    lattice_err = float(np.max(np.abs(raw[1:] - 4 * counts[1 : LATTICE_N + 1])))
    return [
        _check(
            "jacobi",
            max(sieve_err, lattice_err),
            n=JACOBI_N,
            lattice_n=LATTICE_N,
            sieve_err=sieve_err,
            lattice_err=lattice_err,
        )
    ]


def check_coefficient_bound(**_) -> list[CheckResult]:
    trivial = coeff_table(0, BOUND_N).values
    excess = 0.0
    for d in range(1, BOUND_MAX_D + 1):
        values = coeff_table(d, BOUND_N).values
        excess = max(excess, float(np.max(np.abs(values) - trivial)))
    return [_check("coefficient-bound", max(excess, 0.0), n=BOUND_N, max_d=BOUND_MAX_D)]


# Gamma factor and conductor


def check_gamma_factor(**_) -> list[CheckResult]:
    t = np.arange(0.0, 100.5, 0.5)
    worst = 0.0
    for d in range(-UNITARITY_MAX_D, UNITARITY_MAX_D + 1):
        worst = max(worst, float(np.max(np.abs(np.abs(gamma_factor(d, 0.5 + 1j * t)) - 1.0))))
    return [_check("gamma-unitarity", worst, max_d=UNITARITY_MAX_D, points=len(t))]


def check_conductor(**_) -> list[CheckResult]:
    t = np.arange(0.0, 200.5, 0.5)
    floor = C0**-2
    violations_monotone = 0
    violations_floor = 0
    asymptotic = 0.0
    for d in range(0, 61, 5):
        values = conductor(d, t)
        violations_monotone += int(np.sum(np.diff(values) <= 0))
        violations_floor += int(np.sum(values < floor))
        scale = np.abs(2 * d + 1j * t)
        far = scale >= 100.0
        if np.any(far):
            ratio = values[far] * math.pi**2 / scale[far] ** 2
            asymptotic = max(asymptotic, float(np.max(np.abs(ratio - 1.0))))
    return [
        _check("conductor-origin", abs(conductor(0, 0.0) * C0 * C0 - 1.0)),
        _check("conductor-monotone", violations_monotone),
        _check("conductor-asymptotic", asymptotic),
        _check("conductor-floor", violations_floor),
    ]


# Smoothing and Mellin kernel


def check_smoothing(**_) -> list[CheckResult]:
    cfg = SmoothingConfig()
    u = np.exp(np.linspace(-2.0, 2.0, 200))
    partition = float(np.max(np.abs(rho(cfg, u) + rho(cfg, 1.0 / u) - 1.0)))

    h = 1e-5
    derivative = 0.0
    for k in range(1, 5):
        previous = (lambda x: rho(cfg, x)) if k == 1 else (lambda x, j=k - 1: rho_k(cfg, j, x))
        for point in (0.8, 1.05, 1.3):
            numeric = (previous(point * math.exp(h)) - previous(point * math.exp(-h))) / (2 * h)
            closed = rho_k(cfg, k, point)
            derivative = max(derivative, abs(closed - numeric) / (1.0 + abs(closed)))

    z = np.linspace(0.1, 2.0, 50) + 1j * np.linspace(-40.0, 40.0, 50)
    odd = float(np.max(np.abs(mellin_r(cfg, -z) + mellin_r(cfg, z))))
    inversion = abs(mellin_inverse(cfg, 1.0, height=1000.0) - 0.5)

    family = w_eta_family(cfg)
    norms = np.arange(1.0, 400.0)
    dyadic = 0.0
    for big_b in (3.0, 10.0, 100.0):
        total = family.dyadic_sum(norms, big_b)
        dyadic = max(dyadic, float(np.max(np.abs(total - family.w(norms / big_b)))))
    return [
        _check("rho-partition", partition, points=len(u)),
        _check("rho-derivatives", derivative, orders=4, step=h),
        _check("mellin-odd", odd, points=len(z)),
        _check("mellin-inversion", inversion, height=1000.0),
        _check("dyadic-partition", dyadic, B=[3.0, 10.0, 100.0]),
    ]


# Approximate functional equation


def check_afe(**_) -> list[CheckResult]:
    cfg = AfeConfig.from_settings(kernel="mellin", K=4)
    oracle = 0.0
    for t in (20.0, 30.0, 40.0, 50.0):
        s = complex(0.5, t)
        expected = zeta_d0_oracle(s)
        oracle = max(oracle, abs(afe_eval(0, s, cfg).value - expected) / abs(expected))

    residual = 0.0
    reflection = 0.0
    for d in (0, 1, -1, 3, -3, 8, -8):
        for t in (10.0, 30.0):
            for sigma in (0.4, 0.6):
                s = complex(sigma, t)
                residual = max(residual, fe_residual(d, s, cfg))
                value = afe_eval(d, s, cfg).value
                mirrored = afe_eval(d, s.conjugate(), cfg).value
                reflection = max(
                    reflection, abs(mirrored - value.conjugate()) / (1.0 + abs(value))
                )
    return [
        _check("afe-oracle", oracle, heights=[20.0, 30.0, 40.0, 50.0], K=4),
        _check("fe-residual", residual, K=4),
        _check("afe-reflection", reflection),
    ]


# Kloosterman sums and Poisson identities


def check_kloosterman(seed: int = 0, threads=None, **_) -> list[CheckResult]:
    ramanujan = KloostermanCorpusService.ramanujan_sweep(
        seed, norm_max=RAMANUJAN_NORM_MAX, per_gamma=20, threads=threads
    )
    triples = KloostermanCorpusService.random_triples(CORPUS_SIZE, seed)
    corpus = KloostermanCorpusService.sweep(triples, threads=threads)
    summary = corpus.summary()
    return [
        _check("kloosterman-ramanujan", ramanujan.max_error, **ramanujan.summary()),
        _check("kloosterman-bounds", summary["failures"], **summary),
    ]


def check_poisson(**_) -> list[CheckResult]:
    checks = verify_matrix()
    return [_check("poisson", max(check.abs_err for check in checks), cases=len(checks))]


# Mean square and moments


def check_mean_square(seed: int = 0, **_) -> list[CheckResult]:
    coeffs = build_annulus_map("random-sign", 3.0, seed=seed)
    result = smoothed_mean_square(8.0, coeffs, 3.0, lattice=True)
    return [
        _check(
            "mean-square-lattice",
            result.lattice_rel_err,
            D=8.0,
            X=3.0,
            near_diagonal_rel_err=result.rel_err,
        )
    ]


def check_moment_threads(threads=None, **_) -> list[CheckResult]:
    experiment = MomentService.experiment(MOMENT_THREAD_D, 1.0, family="unit")
    single = MomentService.run_moment(experiment, threads=1)
    several = MomentService.run_moment(experiment, threads=max(2, threads or 1))
    return [_check("moment-threads", abs(single.E - several.E), D=MOMENT_THREAD_D, E=single.E)]


def check_moment_scaling(seed: int = 0, threads=None, moment_D=None, **_) -> list[CheckResult]:
    if not moment_D:
        return []
    results, report = MomentService.report(
        moment_D, M=1.0, family="unit", seed=seed, threads=threads
    )
    refinement = max(abs(result.E - result.coarse_E) / result.E for result in results)
    worst_ratio = max(max(result.ratios.values()) for result in results)
    slope = report.slope
    return [
        _check("moment-refinement", refinement, D=list(moment_D), slope=slope),
        CheckResult(
            "moment-envelopes",
            float(worst_ratio),
            float(report.watermark),
            {"flagged": report.flagged, "slope": slope},
        ),
    ]


CHECKS = (
    ("coefficients", check_jacobi),
    ("coefficients", check_coefficient_bound),
    ("gamma", check_gamma_factor),
    ("gamma", check_conductor),
    ("smoothing", check_smoothing),
    ("afe", check_afe),
    ("kloosterman", check_kloosterman),
    ("kloosterman", check_poisson),
    ("moments", check_mean_square),
    ("moments", check_moment_threads),
    ("moments", check_moment_scaling),
)
GROUPS = tuple(dict.fromkeys(group for group, _ in CHECKS))


class VerificationService:
    """
    Service for running the invariant suite.

    Usage:
        report = VerificationService.run_all(seed=7, threads=4)
        report.passed
        report = VerificationService.run_all(seed=7, groups=("coefficients",))
    """

    @staticmethod
    def run_all(
        seed: int = 0,
        threads=None,
        groups: Optional[tuple[str, ...]] = None,
        moment_D=None,
    ) -> VerificationReport:
        """
        Run every check of the selected groups in order.

        A LabError raised inside a check fails that check only; the suite continues.
        """
        report = VerificationReport()
        for group, check in CHECKS:
            if groups is not None and group not in groups:
                continue
            try:
                results = check(seed=seed, threads=threads, moment_D=moment_D)
            except LabError as exc:
                logger.error("Check %s raised %s: %s", check.__name__, exc.default_code, exc)
                results = [
                    CheckResult(
                        check.__name__.removeprefix("check_").replace("_", "-"),
                        math.inf,
                        0.0,
                        exc.as_record(),
                    )
                ]
            for result in results:
                log = logger.info if result.passed else logger.warning
                log(
                    "verify %s: %s (%.3e <= %.1e)",
                    result.name,
                    "PASSED" if result.passed else "FAILED",
                    result.value,
                    result.tolerance,
                )
            report.checks.extend(results)
        logger.info(
            "Verification suite: %d checks, %d failed",
            len(report.checks),
            len(report.failures),
        )
        return report
