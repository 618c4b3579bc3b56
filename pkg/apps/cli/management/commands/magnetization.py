"""
Management command: magnetization

Average ⟨Z⟩ over every qubit of a subset after a few Floquet steps, vs θ_h.

Usage:
    uv run python manage.py magnetization
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import SweepForm


class Command(ReportCommand):
    help = "Average magnetization vs θ_h."
    form_class = SweepForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--theta-grid", default="0:pi/2:9")
        parser.add_argument("--qubits", default="28")
        parser.add_argument("--steps", default=5)
        parser.add_argument("--observable", default="magnetization-28")
        parser.add_argument("--boundary-mode", default="closed_loops")

    def run(self, data, config):
        return services.magnetization(
            data["device"],
            thetas=data["theta_grid"],
            sizes=data["qubits"],
            steps=data["steps"],
            observable=data["observable"],
            boundary_mode=data["boundary_mode"],
            precision=data["precision"],
            budget=data["mem_budget"],
            workers=data["workers"],
            config=config,
        )
