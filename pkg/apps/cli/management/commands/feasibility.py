"""
Management command: feasibility

Effective-fidelity relations evaluated for the reference experiments (random
circuit sampling, OTOC, Floquet).

Usage:
    uv run python manage.py feasibility
    uv run python manage.py feasibility --stat-error 0.01
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import FeasibilityForm


class Command(ReportCommand):
    help = "Fidelity and volume table for the reference experiments."
    form_class = FeasibilityForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument(
            "--stat-error", help="error bar for the feasible volume"
        )

    def run(self, data, config):
        return services.feasibility(stat_error=data["stat_error"], config=config)
