"""
Management command: decay

Observable series over Floquet steps for each θ_h, fitted with an exponential.
Reports the base-2 rate, fit quality and steps-to-decay; the trend of
steps-to-decay over θ_h goes to the log.

Usage:
    uv run python manage.py decay --theta-grid 18pi/64 --qubits 20
    uv run python manage.py decay --thresholds 0.1,0.02
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import DecayForm


class Command(ReportCommand):
    help = "Exponential decay fits and steps-to-decay vs θ_h."
    form_class = DecayForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--theta-grid", default="pi/8:3pi/8:5")
        parser.add_argument("--qubits", default=20)
        parser.add_argument("--steps", default=20)
        parser.add_argument("--observable", default="z62")
        parser.add_argument("--boundary-mode", default="closed_loops")
        parser.add_argument("--threshold", help="[EFFVOL_DECAY_THRESHOLD]")
        parser.add_argument("--thresholds", help="extra thresholds, comma list")

    def run(self, data, config):
        return services.decay(
            data["device"],
            thetas=data["theta_grid"],
            qubits=data["qubits"],
            steps=data["steps"],
            observable=data["observable"],
            boundary_mode=data["boundary_mode"],
            threshold=data["threshold"],
            thresholds=data["thresholds"],
            precision=data["precision"],
            budget=data["mem_budget"],
            workers=data["workers"],
            config=config,
        )
