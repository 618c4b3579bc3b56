from django.apps import AppConfig


class CliffordConfig(AppConfig):
    name = "apps.clifford"
    verbose_name = "Stabilizer tableaux and operator spreading"
