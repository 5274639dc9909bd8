"""
Base settings shared across all environments
"""

import os
from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Only used by Django internals; nothing in the lab signs data.
SECRET_KEY = config("SECRET_KEY", default="heckelab-insecure-local-key")

# Application definition
INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "shared",
    "gauss",
    "hecke",
    "analytic",
    "zeta",
    "kloosterman",
    "moments",
]

# Run ledger database
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.path.join(BASE_DIR, config("LEDGER_DB_NAME", default="heckelab_ledger.sqlite3")),
    },
}

# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Lab configuration
# Every numeric tunable of the library is read here; modules never call config() directly.
HECKE_LAB = {
    # Worker pool
    "THREADS": config("HECKE_LAB_THREADS", default=1, cast=int),
    "PARALLEL_BACKEND": config("HECKE_LAB_PARALLEL_BACKEND", default="loky"),
    # Reporting constants
    "THETA": config("HECKE_LAB_THETA", default=2 / 9, cast=float),
    "EPSILON_REPORT": config("HECKE_LAB_EPSILON_REPORT", default=0.1, cast=float),
    "EPSILON_REFERENCE": config("HECKE_LAB_EPSILON_REFERENCE", default=0.05, cast=float),
    "WATERMARK": config("HECKE_LAB_WATERMARK", default=1e4, cast=float),
    # Resource caps
    "DESK_CAP_D": config("HECKE_LAB_DESK_CAP_D", default=24, cast=int),
    "COEFF_TABLE_CAP": config("HECKE_LAB_COEFF_TABLE_CAP", default=10_000_000, cast=int),
    "DIRECT_KLOOSTERMAN_CAP": config(
        "HECKE_LAB_DIRECT_KLOOSTERMAN_CAP", default=1_000_000, cast=int
    ),
    "FACTOR_NORM_CAP": config("HECKE_LAB_FACTOR_NORM_CAP", default=10**12, cast=int),
    # Approximate functional equation
    "AFE_KERNEL": config("HECKE_LAB_AFE_KERNEL", default="mellin"),
    # Taylor-kernel error constant; `zeta calibrate` fails when the fit on its grid exceeds it
    "AFE_ERROR_CONSTANT": config("HECKE_LAB_AFE_ERROR_CONSTANT", default=100.0, cast=float),
    # Randomized corpora
    "DEFAULT_SEED": config("HECKE_LAB_SEED", default=7, cast=int),
    # Artifacts
    "RESULTS_DIR": config("HECKE_LAB_RESULTS_DIR", default=os.path.join(BASE_DIR, "results")),
}

# REST Framework is used for its serializers only
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}
