"""
Run-configuration forms for the management commands.

Every command binds its parsed options to one of these forms before any
compute starts. A form that does not validate becomes exit code 2.

- ReportForm        : --out, shared by every command
- RunForm           : adds --device and --seed
- DenseRunForm      : adds --mem-budget, --precision and --workers
- SweepForm         : θ_h grid × subset sizes for the Floquet sweeps
- NoisySweepForm    : adds --epsilon and --shots
- DecayForm, CostForm, PurityForm, SpreadForm : one per analysis command
- TDeltaForm, MitigateForm, FeasibilityForm : pure arithmetic, no device
- ExportDeviceForm  : device or Floquet circuit document
"""

import math
import re
from pathlib import Path

import numpy as np
from django import forms
from django.conf import settings

from apps.analysis.chaos import ChaoticModel, Geometry
from apps.circuits.builders import ENTANGLERS
from apps.circuits.devices import HEAVY_HEX_127
from apps.circuits.observables import resolve_observable
from apps.circuits.subsets import BoundaryMode
from apps.cli.services import load_device
from apps.clifford.spreading import FAMILIES
from apps.core import resources
from apps.core.exceptions import ValidationError

# [sign][coef][*]pi[/den], e.g. pi/4, 3pi/8, -3*pi/16, 0.5pi
_PI_ANGLE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d*)?|\.\d+)?"
    r"\*?pi(?:/(?P<den>\d+(?:\.\d*)?))?$",
    re.IGNORECASE,
)
_BUTTERFLY = re.compile(r"^(\d+)([XYZ])$", re.IGNORECASE)


def parse_angle(text: str) -> float:
    """A float literal or a multiple of π such as "3pi/8"."""
    token = text.strip().replace(" ", "")
    match = _PI_ANGLE.match(token)
    if match:
        coef = float(match.group("coef") or 1.0)
        den = float(match.group("den") or 1.0)
        if den == 0:
            raise ValidationError(f"zero denominator in angle {text!r}")
        value = coef * math.pi / den
        return -value if match.group("sign") == "-" else value
    try:
        value = float(token)
    except ValueError:
        raise ValidationError(f"cannot read angle {text!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"angle {text!r} is not finite")
    return value


def parse_theta_grid(text: str) -> tuple[float, ...]:
    """
    "start:stop:count" for an evenly spaced grid with both ends included, or a
    comma list of angles. Angles accept the forms `parse_angle` reads.
    """
    body = text.strip()
    if not body:
        raise ValidationError("theta grid is empty")
    if ":" in body:
        parts = body.split(":")
        if len(parts) != 3:
            raise ValidationError(f"range grid needs start:stop:count, got {text!r}")
        start, stop = parse_angle(parts[0]), parse_angle(parts[1])
        try:
            count = int(parts[2])
        except ValueError:
            raise ValidationError(f"grid count {parts[2]!r} is not whole") from None
        if count < 1:
            raise ValidationError("grid count must be at least 1")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(parse_angle(item) for item in body.split(",") if item.strip())


def parse_int_list(text: str) -> tuple[int, ...]:
    """Comma list "20,25,28" or inclusive range "7:25:3"."""
    body = text.strip()
    sep = ":" if ":" in body else ","
    try:
        parts = [int(item) for item in body.split(sep) if item.strip()]
    except ValueError:
        raise ValidationError(f"cannot read integer list {text!r}") from None
    if sep == ",":
        return tuple(parts)
    if len(parts) not in (2, 3):
        raise ValidationError(f"range needs start:stop[:step], got {text!r}")
    step = parts[2] if len(parts) == 3 else 1
    if step < 1:
        raise ValidationError("range step must be at least 1")
    return tuple(range(parts[0], parts[1] + 1, step))


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(parse_angle(item) for item in text.split(",") if item.strip())


def _form_error(exc: ValidationError) -> forms.ValidationError:
    return forms.ValidationError(str(exc), code="invalid")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class ParsedField(forms.Field):
    """Field whose text value goes through a parser returning a tuple."""

    parser = staticmethod(parse_int_list)

    def to_python(self, value):
        if value in self.empty_values:
            return ()
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        try:
            return self.parser(str(value))
        except ValidationError as exc:
            raise _form_error(exc) from exc


class ThetaGridField(ParsedField):
    parser = staticmethod(parse_theta_grid)


class IntListField(ParsedField):
    def __init__(self, *, min_value: int | None = None, **kwargs) -> None:
        self.min_value = min_value
        super().__init__(**kwargs)

    def validate(self, value) -> None:
        super().validate(value)
        if self.min_value is not None and any(v < self.min_value for v in value):
            raise forms.ValidationError(
                f"every entry must be at least {self.min_value}", code="min_value"
            )


class FloatListField(ParsedField):
    parser = staticmethod(parse_float_list)


class AngleField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return None
        if isinstance(value, (int, float)):
            return float(value)
        try:
            return parse_angle(str(value))
        except ValidationError as exc:
            raise _form_error(exc) from exc


def _choices(values) -> list[tuple[str, str]]:
    return [(str(v), str(v)) for v in values]


# ---------------------------------------------------------------------------
# Shared bases
# ---------------------------------------------------------------------------


class ReportForm(forms.Form):
    out = forms.CharField(required=False)

    def clean_out(self) -> Path | None:
        value = self.cleaned_data["out"]
        if not value:
            return None
        path = Path(value)
        if not path.is_absolute():
            path = Path(settings.EFFVOL_OUTPUT_DIR) / path
        return path


class RunForm(ReportForm):
    device = forms.CharField(required=False)
    seed = forms.IntegerField(required=False, min_value=0)

    def clean_device(self):
        try:
            return load_device(self.cleaned_data["device"] or HEAVY_HEX_127)
        except ValidationError as exc:
            raise _form_error(exc) from exc

    def clean_seed(self) -> int:
        value = self.cleaned_data["seed"]
        return 0 if value is None else value


class DenseRunForm(RunForm):
    mem_budget = forms.IntegerField(required=False, min_value=1)
    precision = forms.ChoiceField(
        required=False, choices=_choices(resources.PRECISIONS)
    )
    workers = forms.IntegerField(required=False, min_value=1)

    def clean_mem_budget(self) -> int:
        return resources.resolve_budget(self.cleaned_data["mem_budget"])

    def clean_precision(self) -> str:
        return self.cleaned_data["precision"] or settings.EFFVOL_PRECISION

    def clean_workers(self) -> int:
        value = self.cleaned_data["workers"]
        return settings.EFFVOL_WORKERS if value is None else value


class ObservableMixin(forms.Form):
    observable = forms.CharField()
    boundary_mode = forms.ChoiceField(
        required=False, choices=_choices(m.value for m in BoundaryMode)
    )

    def clean_observable(self):
        try:
            return resolve_observable(self.cleaned_data["observable"])
        except ValidationError as exc:
            raise _form_error(exc) from exc

    def clean_boundary_mode(self) -> BoundaryMode:
        return BoundaryMode(
            self.cleaned_data["boundary_mode"] or BoundaryMode.CLOSED_LOOPS
        )


# ---------------------------------------------------------------------------
# Floquet sweeps
# ---------------------------------------------------------------------------


class SweepForm(ObservableMixin, DenseRunForm):
    theta_grid = ThetaGridField()
    qubits = IntListField(min_value=1)
    steps = forms.IntegerField(min_value=0)


class NoisySweepForm(SweepForm):
    """Sweep that may replace exact values by Pauli-noise trajectory means."""

    epsilon = forms.FloatField(required=False, min_value=0.0, max_value=1.0)
    shots = forms.IntegerField(required=False, min_value=1)

    def clean_epsilon(self) -> float:
        return self.cleaned_data["epsilon"] or 0.0

    def clean_shots(self) -> int:
        return self.cleaned_data["shots"] or 1000


class LightConeSweepForm(NoisySweepForm):
    """Sweep whose subset sizes default to the observable's light cone."""

    qubits = IntListField(required=False, min_value=1)


class DecayForm(ObservableMixin, DenseRunForm):
    theta_grid = ThetaGridField()
    qubits = forms.IntegerField(min_value=1)
    steps = forms.IntegerField(min_value=1)
    threshold = forms.FloatField(required=False)
    thresholds = FloatListField(required=False)

    def clean_threshold(self) -> float:
        value = self.cleaned_data["threshold"]
        value = settings.EFFVOL_DECAY_THRESHOLD if value is None else value
        if not 0 < value < 1:
            raise forms.ValidationError("threshold must lie in (0, 1)")
        return value

    def clean_thresholds(self) -> tuple[float, ...]:
        values = self.cleaned_data["thresholds"]
        if any(not 0 < v < 1 for v in values):
            raise forms.ValidationError("every threshold must lie in (0, 1)")
        return values


# ---------------------------------------------------------------------------
# Contraction cost
# ---------------------------------------------------------------------------


class CostForm(ObservableMixin, RunForm):
    steps = forms.IntegerField(min_value=0)
    theta = AngleField()
    qubits = forms.IntegerField(required=False, min_value=1)
    fuse = forms.BooleanField(required=False)
    commutation_aware = forms.BooleanField(required=False)
    optimizer_budget = forms.IntegerField(required=False, min_value=0)

    def clean_optimizer_budget(self) -> int:
        value = self.cleaned_data["optimizer_budget"]
        return settings.EFFVOL_OPTIMIZER_BUDGET if value is None else value


# ---------------------------------------------------------------------------
# Clifford ensembles
# ---------------------------------------------------------------------------


class PurityForm(RunForm):
    gates = forms.IntegerField(min_value=0)
    butterfly = forms.CharField(required=False)
    cut = IntListField(required=False, min_value=0)
    samples = forms.IntegerField(min_value=1)
    entangler = forms.ChoiceField(choices=_choices(ENTANGLERS))
    mirrored = forms.BooleanField(required=False)
    fidelity = forms.FloatField(required=False, min_value=0.0, max_value=1.0)

    def clean_butterfly(self) -> tuple[int, str] | None:
        value = self.cleaned_data["butterfly"]
        if not value:
            return None
        match = _BUTTERFLY.match(value.strip())
        if not match:
            raise forms.ValidationError(
                f"butterfly must look like 62X (qubit then Pauli), got {value!r}"
            )
        return int(match.group(1)), match.group(2).upper()

    def clean_fidelity(self) -> float | None:
        value = self.cleaned_data["fidelity"]
        if value is not None and value <= 0:
            raise forms.ValidationError("fidelity must be positive")
        return value

    def clean(self):
        cleaned = super().clean()
        graph = cleaned.get("device")
        if graph is None:
            return cleaned
        butterfly = cleaned.get("butterfly")
        if butterfly and butterfly[0] not in graph:
            self.add_error("butterfly", f"qubit {butterfly[0]} is not on the device")
        missing = [q for q in cleaned.get("cut", ()) if q not in graph]
        if missing:
            self.add_error("cut", f"qubits {missing} are not on the device")
        return cleaned


class SpreadForm(RunForm):
    family = forms.ChoiceField(choices=_choices(FAMILIES))
    samples = forms.IntegerField(min_value=1)
    steps = forms.IntegerField(required=False, min_value=2)
    origin = forms.IntegerField(required=False, min_value=0)


# ---------------------------------------------------------------------------
# Arithmetic reports
# ---------------------------------------------------------------------------


class TDeltaForm(ReportForm):
    v = forms.FloatField()
    epsilon = FloatListField()
    delta = forms.FloatField(required=False)
    log_inv_delta = forms.FloatField(required=False)
    geometry = forms.ChoiceField(choices=_choices(g.value for g in Geometry))
    asymptotic = forms.BooleanField(required=False)

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        if cleaned.get("delta") is None and cleaned.get("log_inv_delta") is None:
            raise forms.ValidationError("give --delta or --log-inv-delta")
        for eps in cleaned["epsilon"]:
            try:
                ChaoticModel(
                    v=cleaned["v"],
                    epsilon=eps,
                    delta=cleaned["delta"] if cleaned["delta"] is not None else 0.5,
                    geometry=cleaned["geometry"],
                    log_inv_delta=cleaned["log_inv_delta"],
                )
            except ValidationError as exc:
                raise _form_error(exc) from exc
            if cleaned["asymptotic"] and eps == 0:
                raise forms.ValidationError("the asymptote needs epsilon > 0")
        return cleaned


class MitigateForm(ReportForm):
    raw = forms.FloatField()
    f_eff = forms.FloatField(required=False)
    epsilon = forms.FloatField(required=False, min_value=0.0)
    volume = forms.FloatField(required=False, min_value=0.0)
    floor = forms.FloatField(required=False, min_value=0.0)

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        by_model = cleaned["epsilon"] is not None and cleaned["volume"] is not None
        if (cleaned["f_eff"] is None) == (not by_model):
            raise forms.ValidationError(
                "give either --f-eff or both --epsilon and --volume"
            )
        return cleaned


class FeasibilityForm(ReportForm):
    stat_error = forms.FloatField(required=False)

    def clean_stat_error(self) -> float | None:
        value = self.cleaned_data["stat_error"]
        if value is not None and not 0 < value < 1:
            raise forms.ValidationError("statistical error must lie in (0, 1)")
        return value


class ExportDeviceForm(RunForm):
    circuit = forms.ChoiceField(required=False, choices=_choices(("", "floquet")))
    steps = forms.IntegerField(required=False, min_value=0)
    theta = AngleField(required=False)

    def clean(self):
        cleaned = super().clean()
        if cleaned.get("circuit") == "floquet" and (
            cleaned.get("steps") is None or cleaned.get("theta") is None
        ):
            raise forms.ValidationError("a floquet circuit needs --steps and --theta")
        return cleaned
