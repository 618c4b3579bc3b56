"""
Management command: purity

Ensemble-averaged reduced purity of a cut through random Clifford OTOC
circuits, gate by gate, with the Haar value and an optional bond-dimension
bound for a target fidelity.

Usage:
    uv run python manage.py purity --device "grid(4,4)" --gates 40 --samples 50
    uv run python manage.py purity --butterfly 62X --fidelity 0.06
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import PurityForm


class Command(ReportCommand):
    help = "Reduced purity along a Clifford OTOC ensemble."
    form_class = PurityForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--gates", default=251)
        parser.add_argument("--butterfly", help="qubit then Pauli, e.g. 62X")
        parser.add_argument("--cut", help="qubits of the cut; lower half if omitted")
        parser.add_argument("--samples", default=200)
        parser.add_argument("--entangler", default="iswap")
        parser.add_argument("--mirrored", action="store_true")
        parser.add_argument("--fidelity", help="target fidelity for the χ bound")

    def run(self, data, config):
        return services.purity(
            data["device"],
            gates=data["gates"],
            butterfly=data["butterfly"],
            cut=data["cut"],
            samples=data["samples"],
            seed=data["seed"],
            entangler=data["entangler"],
            mirrored=data["mirrored"],
            fidelity_target=data["fidelity"],
            config=config,
        )
