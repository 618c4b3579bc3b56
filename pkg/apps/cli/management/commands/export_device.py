"""
Management command: export_device

Writes a device, or a Floquet circuit on it, as a JSON document that --device
and the circuit loader read back.

Usage:
    uv run python manage.py export_device --device "grid(3,3)" --out grid.json
    uv run python manage.py export_device --circuit floquet --steps 5 --theta pi/4
"""

from django.core.management.base import CommandParser

from apps.circuits import serialization
from apps.cli import services
from apps.cli.base import ReportCommand
from apps.cli.forms import ExportDeviceForm


class Command(ReportCommand):
    help = "Export a device or Floquet circuit document."
    form_class = ExportDeviceForm

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--circuit", default="", help="'floquet' or empty")
        parser.add_argument("--steps")
        parser.add_argument("--theta")

    def run(self, data, config):
        return services.export_document(
            data["device"],
            circuit=data["circuit"],
            steps=data["steps"],
            theta=data["theta"],
        )

    def emit(self, doc, out) -> None:
        if out is None:
            self.stdout.write(services.document_text(doc))
            return
        serialization.save(doc, out)
        self.stdout.write(self.style.SUCCESS(f"Wrote {out}"))
