"""
Moment Service for fourth-moment experiments.

Experiments are built from keyword arguments or from a JSON configuration file:

    {
        "D": 8,
        "M": 4,
        "A": {"norm_bound": 4, "family": "unit"},
        "step": 0.1,
        "theta": 0.2222222222222222,
        "epsilon": 0.1,
        "mirror": false,
        "afe": {"K": 4, "kernel": "mellin", "b": 1.4142135623730951}
    }

Every key except D is optional; A defaults to the unit map on 0 < N(mu) <= M and accepts
the coefficient map payload of CoeffMapSerializer. The integral for each d is an
independent job; results are merged in d order so E does not depend on the worker count.
"""

import json
import logging
import math
import time

from django.conf import settings
from django.core.exceptions import ValidationError

from analytic.smoothing import SmoothingConfig
from hecke.api.serializers import CoeffMapSerializer
from hecke.coeff_maps import build_family
from moments.envelopes import EnvelopeReport, envelope_report, envelopes, ratio
from moments.experiment import (
    CONVERGENCE_TOL,
    MOMENT_KERNEL_TOL,
    SYMMETRY_TOL,
    MomentExperiment,
    MomentResult,
    d_symmetric,
    integrate_character,
)
from shared.exceptions import CapExceeded
from shared.parallel import ordered_map
from shared.validators import validate_positive
from zeta.config import AfeConfig

logger = logging.getLogger(__name__)

CONFIG_KEYS = {"D", "M", "A", "step", "theta", "epsilon", "mirror", "afe"}


def _symmetry(parts) -> bool:
    by_d = {part.d: part.value for part in parts}
    return all(
        math.isclose(by_d[d], by_d[-d], rel_tol=SYMMETRY_TOL, abs_tol=1e-300)
        for d in by_d
        if d > 0
    )


class MomentService:
    """
    Service for computing E(D; M, A) and comparing it with its envelopes.

    Usage:
        experiment = MomentService.experiment(D=4, M=4, family="unit")
        result = MomentService.run_moment(experiment, threads=4)
        results, report = MomentService.report([4, 6, 8], M=1)
    """

    @staticmethod
    def afe_config(K=None, kernel=None, b=None) -> AfeConfig:
        """AfeConfig from settings with the kernel tolerance used inside moment integrands."""
        smoothing = SmoothingConfig(b=b) if b is not None else None
        return AfeConfig.from_settings(
            K=K, kernel=kernel, smoothing=smoothing, kernel_tol=MOMENT_KERNEL_TOL
        )

    @staticmethod
    def experiment(
        D,
        M=1.0,
        family=None,
        seed=0,
        step=None,
        theta=None,
        epsilon=None,
        mirror=False,
        afe=None,
        coeffs=None,
    ) -> MomentExperiment:
        """
        Build an experiment; theta and epsilon default to HECKE_LAB THETA and EPSILON_REPORT.

        A is the named family (unit by default) on 0 < N(mu) <= M, or coeffs when given, in
        which case family only labels it.
        """
        lab = settings.HECKE_LAB
        if coeffs is None:
            family = family or "unit"
            coeffs = build_family(family, max(1, int(math.floor(M))), seed=seed)
        else:
            family = family or "custom"
        return MomentExperiment(
            D=float(D),
            M=float(M),
            A=coeffs,
            step=step,
            afe=afe or MomentService.afe_config(),
            theta=lab["THETA"] if theta is None else theta,
            epsilon=lab["EPSILON_REPORT"] if epsilon is None else epsilon,
            mirror=mirror,
            family=family,
        )

    @staticmethod
    def load_config(path) -> dict:
        """Read an experiment configuration file."""
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise ValidationError(f"Cannot read configuration '{path}': {exc.strerror}")
        except json.JSONDecodeError as exc:
            raise ValidationError(f"Configuration '{path}' is not valid JSON: {exc.msg}")
        if not isinstance(data, dict):
            raise ValidationError("Configuration must be a JSON object")
        return data

    @staticmethod
    def experiment_from_config(data: dict, seed=0, **overrides) -> MomentExperiment:
        """
        Build an experiment from a configuration record; non-None overrides win.

        Raises:
            ValidationError: unknown keys, missing D or an invalid coefficient map
        """
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ValidationError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")
        merged = {**data, **{key: value for key, value in overrides.items() if value is not None}}
        if "D" not in merged:
            raise ValidationError("Configuration needs D")
        validate_positive(merged["D"], "D")
        validate_positive(merged.get("M", 1.0), "M")
        D, M = merged["D"], merged.get("M", 1.0)

        coeffs, family = None, None
        if "A" in merged:
            serializer = CoeffMapSerializer(data=merged["A"])
            if not serializer.is_valid():
                raise ValidationError(f"Invalid coefficient map: {serializer.errors}")
            coeffs = serializer.build(seed=seed)
            family = serializer.validated_data.get("family")

        afe = merged.get("afe", {})
        return MomentService.experiment(
            D,
            M,
            family=family,
            seed=seed,
            step=merged.get("step"),
            theta=merged.get("theta"),
            epsilon=merged.get("epsilon"),
            mirror=bool(merged.get("mirror", False)),
            afe=MomentService.afe_config(afe.get("K"), afe.get("kernel"), afe.get("b")),
            coeffs=coeffs,
        )

    @staticmethod
    def run_moment(experiment: MomentExperiment, threads=None) -> MomentResult:
        """
        Compute E(D; M, A).

        Args:
            experiment: The experiment
            threads: Worker count for the per-d integrals

        Returns:
            MomentResult

        Raises:
            CapExceeded: D above HECKE_LAB["DESK_CAP_D"] or M > D
        """
        cap = settings.HECKE_LAB["DESK_CAP_D"]
        if experiment.D > cap:
            raise CapExceeded(f"D = {experiment.D:g} exceeds the desk cap {cap}", D=experiment.D)
        if experiment.M > experiment.D:
            raise CapExceeded("M must not exceed D", D=experiment.D, M=experiment.M)

        started = time.perf_counter()
        grid = experiment.grid()
        coeffs = experiment.coeffs
        characters = [d for d in experiment.characters if d >= 0 or not experiment.mirror]
        logger.info(
            "Moment D=%g M=%g: %d characters, %d nodes each, step %.4g",
            experiment.D,
            experiment.M,
            len(characters),
            len(grid),
            grid[1] - grid[0],
        )
        parts = ordered_map(
            integrate_character,
            [(d, grid, coeffs, experiment.afe) for d in characters],
            threads=threads,
        )
        if experiment.mirror:
            parts = [part.mirrored() for part in reversed(parts) if part.d > 0] + parts

        E = math.fsum(part.value for part in parts)
        coarse_E = math.fsum(part.coarse for part in parts)
        converged = E == 0 or abs(E - coarse_E) <= CONVERGENCE_TOL * E
        if not converged:
            logger.warning(
                "Moment D=%g not converged: step halving moved E from %.6g to %.6g",
                experiment.D,
                coarse_E,
                E,
            )

        symmetric = None
        if not experiment.mirror and d_symmetric(coeffs):
            symmetric = _symmetry(parts)
            if not symmetric:
                logger.warning("Moment D=%g: partial integrals for d and -d differ", experiment.D)

        bounds = envelopes(
            experiment.D,
            experiment.M,
            coeffs.l2_squared(),
            coeffs.sup_squared(),
            experiment.epsilon,
            experiment.theta,
        )
        result = MomentResult(
            E=E,
            per_d=parts,
            error_bar=math.fsum(part.error_bar for part in parts),
            coarse_E=coarse_E,
            converged=converged,
            symmetric=symmetric,
            envelope_thm1_14=bounds["thm1_14"],
            envelope_thm1_15=bounds["thm1_15"],
            envelope_sarnak=bounds["sarnak"],
            ratios={key: ratio(E, value) for key, value in bounds.items()},
            runtime_sec=time.perf_counter() - started,
            config_echo=experiment.as_record(),
        )
        logger.info(
            "Moment D=%g M=%g: E=%.8g +- %.2g (%.1fs)",
            experiment.D,
            experiment.M,
            E,
            result.error_bar,
            result.runtime_sec,
        )
        return result

    @staticmethod
    def report(D_values, M=1.0, family="unit", seed=0, threads=None, step=None, watermark=None):
        """
        Run one experiment per D and tabulate the envelope ratios.

        Returns:
            (list of MomentResult, EnvelopeReport)

        Raises:
            ValidationError: fewer than two distinct D values
        """
        if len(set(D_values)) < 2:
            raise ValidationError("moment report needs at least two distinct D values")
        results = [
            MomentService.run_moment(
                MomentService.experiment(D, M, family=family, seed=seed, step=step),
                threads=threads,
            )
            for D in D_values
        ]
        report: EnvelopeReport = envelope_report(results, watermark=watermark)
        return results, report
