from django.apps import AppConfig


class EffvolConfig(AppConfig):
    name = "apps.effvol"
    verbose_name = "Light cones, effective volume and fidelity"
