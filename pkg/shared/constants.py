# Shared constants for all apps

import math
from fractions import Fraction

import numpy as np

EULER_GAMMA = float(np.euler_gamma)

# C_0 = 4 pi e^gamma; the conductor never drops below C_0^-2.
C0 = 4.0 * math.pi * math.exp(EULER_GAMMA)

# B_2, B_4, ..., B_20
BERNOULLI_EVEN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)

# Highest derivative order of the bump kept as an exact polynomial recurrence.
MAX_BUMP_DERIVATIVE = 12

# Strip admitted by the approximate functional equation.
AFE_SIGMA_MIN = -1.0 / 3.0
AFE_SIGMA_MAX = 4.0 / 3.0

# Strip in which the Taylor coefficients of the gamma-factor ratio are defined.
EXPANSION_SIGMA_MIN = -0.5
EXPANSION_SIGMA_MAX = 1.5

# Upper end of the unconditional spectral-gap window.
THETA_MAX = 2.0 / 9.0

# Named PRNG streams; ids are part of the reproducibility contract.
STREAM_IDS = {
    "kloosterman-corpus": 1,
    "coeff-map": 2,
    "annulus-signs": 3,
    "ramanujan-alpha": 4,
}

# CSV artifacts carry "# heckelab-csv schema=<name> version=<n>" as their first line.
CSV_SCHEMA_VERSIONS = {
    "coeff-table": 1,
    "kloosterman-corpus": 1,
    "smooth-table": 1,
    "moment": 1,
    "envelope-report": 1,
    "verify": 1,
    "zeta-eval": 1,
    "afe-calibration": 1,
}

# Declared tolerances of the verification suite; a check passes when its value is at most this.
VERIFY_TOLERANCES = {
    "jacobi": 0.0,
    "coefficient-bound": 1e-12,
    "gamma-unitarity": 1e-10,
    "conductor-origin": 1e-10,
    "conductor-monotone": 0.0,
    "conductor-asymptotic": 0.02,
    "conductor-floor": 0.0,
    "rho-partition": 1e-12,
    "rho-derivatives": 1e-6,
    "mellin-odd": 1e-9,
    "mellin-inversion": 1e-6,
    "dyadic-partition": 1e-12,
    "afe-oracle": 1e-2,
    "fe-residual": 0.05,
    "afe-reflection": 1e-12,
    "kloosterman-ramanujan": 1e-6,
    "kloosterman-bounds": 0.0,
    "poisson": 1e-9,
    "mean-square-lattice": 1e-6,
    "moment-threads": 0.0,
    "moment-refinement": 0.1,
}
