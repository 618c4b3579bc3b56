"""
Run-configuration parsing and validation tests.

Covers:
- angle, θ_h grid and integer list syntax
- shared option defaults taken from settings
- form-level rejection of parameter combinations the modules would refuse
"""

import math
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from apps.circuits.devices import DeviceGraph
from apps.circuits.subsets import BoundaryMode
from apps.cli.forms import (
    DecayForm,
    MitigateForm,
    NoisySweepForm,
    PurityForm,
    TDeltaForm,
    parse_angle,
    parse_int_list,
    parse_theta_grid,
)
from apps.core.exceptions import ValidationError


class ParseTest(SimpleTestCase):
    def test_angles(self) -> None:
        self.assertAlmostEqual(parse_angle("pi/4"), math.pi / 4)
        self.assertAlmostEqual(parse_angle("3pi/8"), 3 * math.pi / 8)
        self.assertAlmostEqual(parse_angle("-3*pi/16"), -3 * math.pi / 16)
        self.assertAlmostEqual(parse_angle("0.5PI"), math.pi / 2)
        self.assertEqual(parse_angle(" 0.25 "), 0.25)
        for bad in ("abc", "pi/0", "nan", "2pi/"):
            with self.assertRaises(ValidationError, msg=bad):
                parse_angle(bad)

    def test_range_grid_includes_both_ends(self) -> None:
        grid = parse_theta_grid("0:pi/2:9")
        self.assertEqual(len(grid), 9)
        self.assertEqual(grid[0], 0.0)
        self.assertAlmostEqual(grid[4], math.pi / 4)
        self.assertAlmostEqual(grid[-1], math.pi / 2)

    def test_list_grid(self) -> None:
        self.assertEqual(parse_theta_grid("0, pi/2"), (0.0, math.pi / 2))
        for bad in ("", "0:1", "0:1:x", "0:1:0"):
            with self.assertRaises(ValidationError, msg=bad):
                parse_theta_grid(bad)

    def test_int_lists(self) -> None:
        self.assertEqual(parse_int_list("20,25,28"), (20, 25, 28))
        self.assertEqual(parse_int_list("7:25:3"), (7, 10, 13, 16, 19, 22, 25))
        self.assertEqual(parse_int_list("28:30"), (28, 29, 30))
        for bad in ("a,b", "1:2:0", "1:2:3:4"):
            with self.assertRaises(ValidationError, msg=bad):
                parse_int_list(bad)


def sweep_data(**overrides):
    data = {
        "device": "grid(2,3)",
        "theta_grid": "0,pi/4",
        "qubits": "4,6",
        "steps": 2,
        "observable": "Z1",
        "boundary_mode": None,
        "seed": None,
        "mem_budget": None,
        "precision": None,
        "workers": None,
        "epsilon": None,
        "shots": None,
        "out": None,
    }
    data.update(overrides)
    return data


class SweepFormTest(SimpleTestCase):
    @override_settings(
        EFFVOL_PRECISION="complex64",
        EFFVOL_WORKERS=3,
        EFFVOL_MEMORY_BUDGET=1 << 20,
        EFFVOL_OUTPUT_DIR=Path("/srv/effvol-out"),
    )
    def test_defaults_from_settings(self) -> None:
        form = NoisySweepForm(data=sweep_data(out="runs/a.csv"))
        self.assertTrue(form.is_valid(), form.errors)
        data = form.cleaned_data
        self.assertIsInstance(data["device"], DeviceGraph)
        self.assertEqual(len(data["device"]), 6)
        self.assertEqual(data["qubits"], (4, 6))
        self.assertEqual(data["precision"], "complex64")
        self.assertEqual(data["workers"], 3)
        self.assertEqual(data["mem_budget"], 1 << 20)
        self.assertEqual(data["boundary_mode"], BoundaryMode.CLOSED_LOOPS)
        self.assertEqual(data["epsilon"], 0.0)
        self.assertEqual(data["shots"], 1000)
        self.assertEqual(data["seed"], 0)
        self.assertEqual(data["out"], Path("/srv/effvol-out/runs/a.csv"))
        self.assertEqual(data["observable"].pauli.support, (1,))

    def test_rejections(self) -> None:
        cases = {
            "theta_grid": "0:pi",
            "qubits": "0,4",
            "observable": "W7",
            "device": "torus(3)",
            "precision": "float16",
            "boundary_mode": "sphere",
            "epsilon": 1.5,
            "workers": 0,
        }
        for field, value in cases.items():
            form = NoisySweepForm(data=sweep_data(**{field: value}))
            self.assertFalse(form.is_valid(), field)
            self.assertIn(field, form.errors)

    def test_missing_device_file(self) -> None:
        form = NoisySweepForm(data=sweep_data(device="/nonexistent/device.json"))
        self.assertFalse(form.is_valid())
        self.assertIn("device", form.errors)


class AnalysisFormTest(SimpleTestCase):
    def test_decay_thresholds(self) -> None:
        base = {
            "device": "chain(6)",
            "theta_grid": "pi/4",
            "qubits": 6,
            "steps": 8,
            "observable": "Z2",
        }
        self.assertTrue(DecayForm(data=base).is_valid())
        self.assertFalse(DecayForm(data={**base, "threshold": 1.5}).is_valid())
        self.assertFalse(DecayForm(data={**base, "thresholds": "0.1,2"}).is_valid())

    def test_purity_butterfly_and_cut(self) -> None:
        base = {
            "device": "grid(2,2)",
            "gates": 4,
            "samples": 2,
            "entangler": "iswap",
        }
        form = PurityForm(data={**base, "butterfly": "3y", "cut": "0,1"})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["butterfly"], (3, "Y"))
        self.assertFalse(PurityForm(data={**base, "butterfly": "X3"}).is_valid())
        self.assertFalse(PurityForm(data={**base, "butterfly": "9X"}).is_valid())
        self.assertFalse(PurityForm(data={**base, "cut": "0,9"}).is_valid())
        self.assertFalse(PurityForm(data={**base, "entangler": "cnot"}).is_valid())

    def test_tdelta_model_checks(self) -> None:
        base = {"v": 1.0, "epsilon": "0,0.01", "delta": 0.05, "geometry": "square_2d"}
        self.assertTrue(TDeltaForm(data=base).is_valid())
        self.assertFalse(TDeltaForm(data={**base, "v": -1.0}).is_valid())
        self.assertFalse(TDeltaForm(data={**base, "delta": 1.0}).is_valid())
        self.assertFalse(TDeltaForm(data={**base, "asymptotic": True}).is_valid())
        self.assertFalse(TDeltaForm(data={**base, "delta": None}).is_valid())
        self.assertTrue(
            TDeltaForm(data={**base, "delta": None, "log_inv_delta": 1000}).is_valid()
        )

    def test_mitigate_needs_one_source(self) -> None:
        self.assertTrue(MitigateForm(data={"raw": 0.2, "f_eff": 0.5}).is_valid())
        self.assertTrue(
            MitigateForm(data={"raw": 0.2, "epsilon": 0.01, "volume": 50}).is_valid()
        )
        self.assertFalse(MitigateForm(data={"raw": 0.2}).is_valid())
        self.assertFalse(MitigateForm(data={"raw": 0.2, "epsilon": 0.01}).is_valid())
        self.assertFalse(
            MitigateForm(
                data={"raw": 0.2, "f_eff": 0.5, "epsilon": 0.01, "volume": 50}
            ).is_valid()
        )
