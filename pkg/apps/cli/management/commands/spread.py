"""
Management command: spread

Operator spreading in random Clifford circuits: mean radius and support per
step and the butterfly velocity fitted over the ballistic window.

Usage:
    uv run python manage.py spread --family cz --samples 50
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import SpreadForm


class Command(ReportCommand):
    help = "Butterfly velocity from Clifford operator spreading."
    form_class = SpreadForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--family", default="iswap")
        parser.add_argument("--samples", default=20)
        parser.add_argument("--steps", help="layers; origin eccentricity if omitted")
        parser.add_argument("--origin", help="start qubit; device centre if omitted")

    def run(self, data, config):
        return services.spread(
            data["device"],
            family=data["family"],
            samples=data["samples"],
            steps=data["steps"],
            origin=data["origin"],
            seed=data["seed"],
            config=config,
        )
