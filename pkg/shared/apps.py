from django.apps import AppConfig
from django.core.exceptions import ImproperlyConfigured


class SharedConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "shared"

    def ready(self):
        """
        Perform startup validation when Django initializes.
        This ensures the lab configuration is complete before any command runs.
        """
        self.validate_lab_settings()

    def validate_lab_settings(self):
        """
        Validate that all required HECKE_LAB keys are configured and in range.

        Raises:
            ImproperlyConfigured: If a key is missing or out of its admissible window
        """
        from django.conf import settings

        from shared.constants import THETA_MAX

        required_keys = [
            "THREADS",
            "PARALLEL_BACKEND",
            "THETA",
            "EPSILON_REPORT",
            "EPSILON_REFERENCE",
            "WATERMARK",
            "DESK_CAP_D",
            "COEFF_TABLE_CAP",
            "DIRECT_KLOOSTERMAN_CAP",
            "FACTOR_NORM_CAP",
            "AFE_KERNEL",
            "AFE_ERROR_CONSTANT",
            "DEFAULT_SEED",
            "RESULTS_DIR",
        ]

        if not hasattr(settings, "HECKE_LAB"):
            raise ImproperlyConfigured("HECKE_LAB setting is missing from settings.py.")

        lab = settings.HECKE_LAB
        missing_keys = [key for key in required_keys if key not in lab]
        if missing_keys:
            raise ImproperlyConfigured(
                f"Missing required HECKE_LAB configuration keys: {', '.join(missing_keys)}"
            )

        if not 0.0 <= lab["THETA"] <= THETA_MAX:
            raise ImproperlyConfigured(
                f"HECKE_LAB['THETA'] = {lab['THETA']} is outside [0, 2/9]."
            )
        if lab["THREADS"] < 1:
            raise ImproperlyConfigured("HECKE_LAB['THREADS'] must be at least 1.")
        if lab["AFE_KERNEL"] not in ("mellin", "taylor"):
            raise ImproperlyConfigured(
                f"HECKE_LAB['AFE_KERNEL'] must be 'mellin' or 'taylor', got {lab['AFE_KERNEL']!r}."
            )
        for key in ("EPSILON_REPORT", "EPSILON_REFERENCE", "WATERMARK", "AFE_ERROR_CONSTANT"):
            if lab[key] <= 0:
                raise ImproperlyConfigured(f"HECKE_LAB['{key}'] must be positive.")
