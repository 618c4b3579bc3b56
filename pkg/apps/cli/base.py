"""
Base class for the report-writing management commands.

A subclass names its form and implements `run(data, config)`. This class adds
the shared options its form declares, binds every option to the form, maps
project errors onto exit codes and writes the result:

    0  success
    2  validation (form errors, ValidationError from a module)
    3  resources (ResourceError: memory budget)
"""

import logging
from pathlib import Path
from typing import Any

from django import forms
from django.core.management.base import BaseCommand, CommandError, CommandParser

from apps.circuits.devices import HEAVY_HEX_127
from apps.core.exceptions import ResourceError, ValidationError
from apps.core.reporting import Report

logger = logging.getLogger(__name__)

VALIDATION_EXIT = 2
RESOURCE_EXIT = 3


class ReportCommand(BaseCommand):
    form_class: type[forms.Form]

    def add_arguments(self, parser: CommandParser) -> None:
        fields = self.form_class.base_fields
        if "device" in fields:
            parser.add_argument(
                "--device",
                default=HEAVY_HEX_127,
                help="heavy_hex_127, chain(n), grid(r,c) or a device JSON path",
            )
        if "seed" in fields:
            parser.add_argument("--seed", default=0, help="root seed (default 0)")
        if "mem_budget" in fields:
            parser.add_argument(
                "--mem-budget", help="bytes for dense buffers [EFFVOL_MEMORY_BUDGET]"
            )
            parser.add_argument(
                "--precision", help="complex128 or complex64 [EFFVOL_PRECISION]"
            )
            parser.add_argument(
                "--workers", help="sweep worker processes [EFFVOL_WORKERS]"
            )
        parser.add_argument(
            "--out",
            help="output path, relative to EFFVOL_OUTPUT_DIR unless absolute; "
            "stdout when omitted",
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: CommandParser) -> None:
        pass

    def run(self, data: dict[str, Any], config: dict[str, Any]) -> Any:
        raise NotImplementedError

    # ------------------------------------------------------------------

    def handle(self, *args, **options) -> None:
        names = list(self.form_class.base_fields)
        form = self.form_class(data={name: options.get(name) for name in names})
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=VALIDATION_EXIT)
        # provenance keeps the options as given, not their parsed forms
        config = {name: options.get(name) for name in names if name != "out"}
        try:
            result = self.run(form.cleaned_data, config)
        except ResourceError as exc:
            raise CommandError(str(exc), returncode=RESOURCE_EXIT) from exc
        except ValidationError as exc:
            raise CommandError(str(exc), returncode=VALIDATION_EXIT) from exc
        self.emit(result, form.cleaned_data["out"])

    def emit(self, report: Report, out: Path | None) -> None:
        if out is None:
            self.stdout.write(report.to_text(), ending="")
            return
        report.save(out)
        self.stdout.write(
            self.style.SUCCESS(f"Wrote {len(report.rows)} rows to {out}")
        )
