"""
Management command: fig4a

Sweeps θ_h for a stabilizer-derived observable at five steps. Without --qubits
the simulated region is the observable's light cone, so values are exact.

Usage:
    uv run python manage.py fig4a
    uv run python manage.py fig4a --observable stabilizer-10 --qubits 23,31
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import LightConeSweepForm


class Command(ReportCommand):
    help = "Stabilizer observable vs θ_h on its light cone or given subsets."
    form_class = LightConeSweepForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--theta-grid", default="0:pi/2:9")
        parser.add_argument("--qubits", help="subset sizes; light cone when omitted")
        parser.add_argument("--steps", default=5)
        parser.add_argument("--observable", default="stabilizer-17")
        parser.add_argument("--boundary-mode", default="closed_loops")
        parser.add_argument("--epsilon", help="gate error; 0 for exact values")
        parser.add_argument("--shots", help="noise trajectories (default 1000)")

    def run(self, data, config):
        return services.fig4a(
            data["device"],
            thetas=data["theta_grid"],
            sizes=data["qubits"],
            steps=data["steps"],
            observable=data["observable"],
            boundary_mode=data["boundary_mode"],
            precision=data["precision"],
            budget=data["mem_budget"],
            workers=data["workers"],
            epsilon=data["epsilon"],
            shots=data["shots"],
            seed=data["seed"],
            config=config,
        )
