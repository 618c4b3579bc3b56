from django.apps import AppConfig


class CliConfig(AppConfig):
    name = "apps.cli"
    verbose_name = "Sweeps and reports"
