from django.apps import AppConfig


class CircuitsConfig(AppConfig):
    name = "apps.circuits"
    verbose_name = "Devices, circuits and builders"
