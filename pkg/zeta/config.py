from dataclasses import dataclass, field, replace
from typing import Optional

from django.conf import settings

from analytic.smoothing import SmoothingConfig
from shared.constants import MAX_BUMP_DERIVATIVE
from shared.exceptions import DomainError

KERNELS = ("mellin", "taylor")


@dataclass(frozen=True)
class AfeConfig:
    """
    Parameters of one approximate-functional-equation evaluation.

    split is None for the balanced split x = y = sqrt(T), or an explicit (x, y) pair.
    kernel selects the second sum: "mellin" integrates the exact Mellin kernel, "taylor"
    uses the truncated expansion rho_tilde_K.
    """

    K: int = 4
    split: Optional[tuple[float, float]] = None
    smoothing: SmoothingConfig = field(default_factory=SmoothingConfig)
    kernel: str = "mellin"
    coeff_cap: Optional[int] = None
    kernel_tol: float = 1e-11
    error_constant: float = 1.0
    epsilon: float = 0.05

    def __post_init__(self):
        if not 0 <= self.K <= MAX_BUMP_DERIVATIVE:
            raise DomainError(f"K must lie in 0..{MAX_BUMP_DERIVATIVE}", K=self.K)
        if self.kernel not in KERNELS:
            raise DomainError(f"Unknown AFE kernel '{self.kernel}'", kernel=self.kernel)
        if self.split is not None and (self.split[0] <= 0 or self.split[1] <= 0):
            raise DomainError("Split lengths must be positive", split=list(self.split))

    @classmethod
    def from_settings(cls, **overrides) -> "AfeConfig":
        lab = settings.HECKE_LAB
        defaults = {
            "kernel": lab["AFE_KERNEL"],
            "coeff_cap": lab["COEFF_TABLE_CAP"],
            "error_constant": lab["AFE_ERROR_CONSTANT"],
            "epsilon": lab["EPSILON_REFERENCE"],
        }
        defaults.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**defaults)

    @property
    def effective_K(self) -> Optional[int]:
        """Expansion order the kernel actually uses; None for the exact kernel."""
        return self.K if self.kernel == "taylor" else None

    def with_split(self, x: float, y: float) -> "AfeConfig":
        return replace(self, split=(float(x), float(y)))

    def as_record(self) -> dict:
        return {
            "K": self.effective_K,
            "split": "balanced" if self.split is None else list(self.split),
            "smoothing": self.smoothing.as_record(),
            "kernel": self.kernel,
            "coeff_cap": self.coeff_cap,
            "kernel_tol": self.kernel_tol,
            "error_constant": self.error_constant,
        }


@dataclass(frozen=True)
class ZetaValue:
    """
    zeta(s, lambda^d) with its error estimate and the bookkeeping of the evaluation.

    terms_used counts the terms of the two sums inside the supports of rho(n/x) and
    rho_tilde_K(n/y), so terms_used <= (ceil(b x), ceil(b y)). The exact kernel's dual weight
    is not compactly supported; its contribution from n > b y is kept apart as tail, summed
    over tail_terms further coefficients and included in value. K is None for the exact
    kernel, which has no expansion order.
    """

    d: int
    s: complex
    value: complex
    err_estimate: float
    T: float
    split: tuple[float, float]
    terms_used: tuple[int, int]
    K: Optional[int]
    kernel: str
    tail: complex = 0j
    tail_terms: int = 0

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "s_re": self.s.real,
            "s_im": self.s.imag,
            "K": self.K,
            "kernel": self.kernel,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "err_estimate": self.err_estimate,
            "T": self.T,
            "x": self.split[0],
            "y": self.split[1],
            "terms_used": list(self.terms_used),
            "tail_re": self.tail.real,
            "tail_im": self.tail.imag,
            "tail_terms": self.tail_terms,
        }
