"""
Management command: fig4b

Sweeps θ_h at a fixed depth over several subset sizes around the observable
and reports the value per (θ_h, n) with its deltas against the next smaller
and the largest subset.

Usage:
    uv run python manage.py fig4b
    uv run python manage.py fig4b --qubits 20,25 --theta-grid 0:pi/2:9 --out fig4b.csv
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import NoisySweepForm


class Command(ReportCommand):
    help = "Floquet observable vs θ_h for several subset sizes."
    form_class = NoisySweepForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--theta-grid", default="0:pi/2:9")
        parser.add_argument("--qubits", default="20,25,28")
        parser.add_argument("--steps", default=20)
        parser.add_argument("--observable", default="z62")
        parser.add_argument("--boundary-mode", default="closed_loops")
        parser.add_argument("--epsilon", help="gate error; 0 for exact values")
        parser.add_argument("--shots", help="noise trajectories (default 1000)")

    def run(self, data, config):
        return services.fig4b(
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
