from django.apps import AppConfig


class KloostermanConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "kloosterman"
    verbose_name = "Kloosterman sums and Poisson summation"
