"""
Management command: tdelta

Precision horizon t_δ of a chaotic circuit for one or more gate errors.

Usage:
    uv run python manage.py tdelta --v 0.6 --epsilon 0,0.005,0.01
    uv run python manage.py tdelta --epsilon 0.01 --log-inv-delta 1000 --asymptotic
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import TDeltaForm


class Command(ReportCommand):
    help = "Solve for the precision horizon t_δ."
    form_class = TDeltaForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--v", default=1.0, help="butterfly velocity")
        parser.add_argument("--epsilon", default="0", help="comma list of errors")
        parser.add_argument("--delta", default=0.05)
        parser.add_argument("--log-inv-delta", help="ln(1/δ); overrides --delta")
        parser.add_argument("--geometry", default="square_2d")
        parser.add_argument("--asymptotic", action="store_true")

    def run(self, data, config):
        return services.tdelta(
            v=data["v"],
            epsilons=data["epsilon"],
            delta=data["delta"],
            log_inv_delta=data["log_inv_delta"],
            geometry=data["geometry"],
            asymptotic=data["asymptotic"],
            config=config,
        )
