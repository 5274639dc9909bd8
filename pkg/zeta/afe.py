"""
zeta(s, lambda^d) in the strip -1/3 <= Re(s) <= 4/3 by an approximate functional equation.
"""

import logging
import math

from analytic.conductor import conductor
from analytic.smoothing import SmoothingConfig
from shared.constants import AFE_SIGMA_MAX, AFE_SIGMA_MIN, C0
from shared.exceptions import PoleAtOne, SplitError, StripError
from zeta.config import AfeConfig, ZetaValue
from zeta.kernels import KERNEL_CLASSES

logger = logging.getLogger(__name__)


def check_strip(s: complex) -> None:
    if not AFE_SIGMA_MIN <= s.real <= AFE_SIGMA_MAX:
        raise StripError(
            "The approximate functional equation needs -1/3 <= Re(s) <= 4/3", sigma=s.real
        )


def resolve_split(T: float, cfg: AfeConfig) -> tuple[float, float]:
    """
    (x, y) with x * y = T; balanced unless cfg.split is set.

    Raises:
        SplitError: explicit split with x * y != T or b * y outside [1/(2 C0), 2 C0 T]
    """
    if cfg.split is None:
        root = math.sqrt(T)
        return root, root
    x, y = cfg.split
    b = cfg.smoothing.b
    if abs(x * y - T) > 1e-9 * T:
        raise SplitError("Explicit split must satisfy x * y = T", x=x, y=y, T=T)
    if not 1.0 / (2.0 * C0) <= b * y <= 2.0 * C0 * T:
        raise SplitError("b * y outside [1/(2 C0), 2 C0 T]", x=x, y=y, T=T, b=b)
    return x, y


def afe_eval(d: int, s: complex, cfg: AfeConfig | None = None) -> ZetaValue:
    """
    Evaluate zeta(s, lambda^d).

    Args:
        d: Character index
        s: Point in the strip -1/3 <= Re(s) <= 4/3
        cfg: Evaluation parameters (defaults from settings)

    Returns:
        ZetaValue

    Raises:
        StripError, SplitError, PoleAtOne (d = 0, s = 1), CoeffCapError
    """
    s = complex(s)
    cfg = cfg or AfeConfig.from_settings()
    check_strip(s)
    if d == 0 and s == 1:
        raise PoleAtOne()
    T = conductor(d, s.imag)
    x, y = resolve_split(T, cfg)
    return KERNEL_CLASSES[cfg.kernel].evaluate(d, s, T, x, y, cfg)


def default_config(kernel: str | None = None, K: int | None = None, b: float | None = None):
    """AfeConfig from settings with optional command-line overrides."""
    smoothing = SmoothingConfig(b=b) if b is not None else None
    return AfeConfig.from_settings(kernel=kernel, K=K, smoothing=smoothing)
