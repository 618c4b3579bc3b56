"""
Management command: mitigate

Divides a raw expectation value by the effective fidelity, given directly or
as exp(−ε·V).

Usage:
    uv run python manage.py mitigate --raw 0.2 --f-eff 0.5
    uv run python manage.py mitigate --raw 0.05 --epsilon 0.01 --volume 100
"""

from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import MitigateForm


class Command(ReportCommand):
    help = "Error-mitigate a raw value by the effective fidelity."
    form_class = MitigateForm

    def add_command_arguments(self, parser) -> None:
        parser.add_argument("--raw", required=True)
        parser.add_argument("--f-eff")
        parser.add_argument("--epsilon")
        parser.add_argument("--volume")
        parser.add_argument("--floor", help="[EFFVOL_MITIGATION_FLOOR]")

    def run(self, data, config):
        return services.mitigate(
            raw=data["raw"],
            f_eff=data["f_eff"],
            epsilon=data["epsilon"],
            volume=data["volume"],
            floor=data["floor"],
            config=config,
        )
