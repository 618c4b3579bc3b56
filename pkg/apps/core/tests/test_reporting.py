"""
CSV report tests.

Covers:
- provenance header layout and JSON coercion
- row width checks
- reading reports back
"""

import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.core.exceptions import CircuitParseError
from apps.core.reporting import REPORT_VERSION, Report, read_report


class ReportTest(SimpleTestCase):
    def _report(self):
        report = Report(
            command="cost",
            columns=["n", "log2_cost"],
            config={"qubits": (28, 30), "seed": np.int64(4), "cap": math.inf},
        )
        report.add(28, 38.81)
        report.add(np.int64(30), np.float64(35.0))
        return report

    def test_header_first_line(self):
        text = self._report().to_text()
        first, second = text.splitlines()[:2]
        self.assertTrue(first.startswith("# {"))
        self.assertEqual(second, "n,log2_cost")

    def test_read_back(self):
        header, rows = read_report(self._report().to_text())
        self.assertEqual(header["command"], "cost")
        self.assertEqual(header["version"], REPORT_VERSION)
        self.assertEqual(header["config"]["qubits"], [28, 30])
        self.assertEqual(header["config"]["seed"], 4)
        self.assertEqual(header["config"]["cap"], "inf")
        self.assertEqual(rows[0], {"n": "28", "log2_cost": "38.81"})
        self.assertEqual(float(rows[1]["log2_cost"]), 35.0)

    def test_row_width(self):
        with self.assertRaises(ValueError):
            self._report().add(1)

    def test_save_creates_parents(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._report().save(Path(tmp) / "nested" / "out.csv")
            header, rows = read_report(path.read_text(encoding="utf-8"))
        self.assertEqual(len(rows), 2)
        self.assertEqual(header["command"], "cost")

    def test_missing_header(self):
        with self.assertRaises(CircuitParseError):
            read_report("n,log2_cost\n1,2\n")
        with self.assertRaises(CircuitParseError):
            read_report("# {not json\nn\n")
