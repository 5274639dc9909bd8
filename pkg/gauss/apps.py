from django.apps import AppConfig


class GaussConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "gauss"
    verbose_name = "Gaussian integer arithmetic"
