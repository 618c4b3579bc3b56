from django.apps import AppConfig


class StatevectorConfig(AppConfig):
    name = "apps.statevector"
    verbose_name = "Dense state-vector simulation"
