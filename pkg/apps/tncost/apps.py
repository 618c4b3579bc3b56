from django.apps import AppConfig


class TncostConfig(AppConfig):
    name = "apps.tncost"
    verbose_name = "Tensor-network contraction cost"
