"""
Management command: convergence

Observable on growing subsets against its exact light-cone value. Compare
--boundary-mode open with closed_loops to see what cutting loops costs.

Usage:
    uv run python manage.py convergence
    uv run python manage.py convergence --qubits 28:32 --boundary-mode closed_loops
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import SweepForm


class Command(ReportCommand):
    help = "Subset-size convergence of a Floquet observable."
    form_class = SweepForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--theta-grid", default="0:pi/4:5")
        parser.add_argument("--qubits", default="7:25:3")
        parser.add_argument("--steps", default=5)
        parser.add_argument("--observable", default="z62")
        parser.add_argument("--boundary-mode", default="open")

    def run(self, data, config):
        return services.convergence(
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
