"""
Management command: cost

Contraction cost of a Floquet observable: light cone, pruning, then open and
closed contraction orders, next to the state-vector cost.

Usage:
    uv run python manage.py cost --qubits 28 --steps 20 --fuse
    uv run python manage.py cost --steps 5 --observable stabilizer-17
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import CostForm


class Command(ReportCommand):
    help = "Open/closed contraction cost vs state-vector cost."
    form_class = CostForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--steps", default=20)
        parser.add_argument("--theta", default="pi/4")
        parser.add_argument("--observable", default="z62")
        parser.add_argument("--qubits", help="subset size; whole device when omitted")
        parser.add_argument("--boundary-mode", default="closed_loops")
        parser.add_argument("--fuse", action="store_true")
        parser.add_argument("--commutation-aware", action="store_true")
        parser.add_argument(
            "--optimizer-budget", help="merge evaluations [EFFVOL_OPTIMIZER_BUDGET]"
        )

    def run(self, data, config):
        return services.cost(
            data["device"],
            steps=data["steps"],
            theta=data["theta"],
            observable=data["observable"],
            qubits=data["qubits"],
            boundary_mode=data["boundary_mode"],
            fuse=data["fuse"],
            commutation_aware=data["commutation_aware"],
            optimizer_budget=data["optimizer_budget"],
            seed=data["seed"],
            config=config,
        )
