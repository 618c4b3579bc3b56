"""
Device and circuit JSON tests.

Covers:
- built-in device references versus inline devices
- matrices, Pauli labels and meta surviving a save/load
- parse errors naming the offending field
"""

import json
import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.circuits import gates
from apps.circuits.builders import build_floquet, build_otoc_clifford_ensemble
from apps.circuits.circuit import Circuit, pauli_op, rzz, u2
from apps.circuits.devices import DeviceGraph, grid, heavy_hex_127
from apps.circuits.serialization import (
    circuit_from_json,
    circuit_to_dict,
    circuit_to_json,
    device_from_json,
    device_to_json,
    load,
    save,
)
from apps.core.exceptions import CircuitParseError


class DeviceJsonTest(SimpleTestCase):
    def test_heavy_hex_document(self):
        doc = json.loads(device_to_json(heavy_hex_127()))
        self.assertEqual(len(doc["coords"]), 127)
        restored = device_from_json(device_to_json(heavy_hex_127()))
        self.assertEqual(restored, heavy_hex_127())

    def test_bad_edge(self):
        with self.assertRaises(CircuitParseError) as ctx:
            device_from_json('{"nodes": [0, 1], "edges": [[0, 1, 2]]}')
        self.assertEqual(ctx.exception.field, "edges[0]")
        with self.assertRaises(CircuitParseError) as ctx:
            device_from_json('{"nodes": [0, 1], "edges": [[0, 5]]}')
        self.assertEqual(ctx.exception.field, "edges")
        with self.assertRaises(CircuitParseError) as ctx:
            device_from_json('{"nodes": [0, 1]}')
        self.assertEqual(ctx.exception.field, "edges")


class CircuitJsonTest(SimpleTestCase):
    def test_builtin_device_is_referenced(self):
        circuit = build_floquet(grid(2, 3), 2, math.pi / 3)
        doc = circuit_to_dict(circuit)
        self.assertEqual(doc["device_ref"], "grid(2,3)")
        self.assertNotIn("device", doc)
        restored = circuit_from_json(circuit_to_json(circuit))
        self.assertEqual(restored.fingerprint, circuit.fingerprint)
        self.assertEqual(restored.meta["steps"], 2)

    def test_subgraph_is_inlined(self):
        sub = heavy_hex_127().subgraph([61, 62, 63])
        circuit = Circuit(sub, (rzz(61, 62, 0.1, 0), rzz(62, 63, 0.1, 1)))
        doc = circuit_to_dict(circuit)
        self.assertIn("device", doc)
        self.assertEqual(circuit_from_json(json.dumps(doc)).graph, sub)

    def test_matrices_and_paulis(self):
        u = np.kron(gates.H, gates.S) @ gates.SQRT_ISWAP
        circuit = Circuit(grid(1, 2), (u2(0, 1, u, 0), pauli_op((0, 1), "XZ", 1)))
        with tempfile.TemporaryDirectory() as tmp:
            path = save(circuit, Path(tmp) / "c.json")
            restored = load(path)
        np.testing.assert_allclose(restored.ops[0].unitary(), u, atol=1e-15)
        self.assertEqual(restored.ops[1].pauli, "XZ")

    def test_save_device(self):
        g = DeviceGraph(nodes=(0, 1, 2), edges=((0, 1), (1, 2)), name="line")
        with tempfile.TemporaryDirectory() as tmp:
            restored = load(save(g, Path(tmp) / "sub" / "d.json"))
        self.assertEqual(restored, g)

    def test_ensemble_round_trip(self):
        circuit = build_otoc_clifford_ensemble(grid(2, 2), 6, (0, "Y"), seed=2)
        restored = circuit_from_json(circuit_to_json(circuit))
        self.assertEqual(restored.ops, circuit.ops)

    def test_errors_name_field(self):
        cases = {
            "{": "line 1",
            "[]": "circuit",
            '{"ops": []}': "circuit",
            '{"device_ref": "hex", "ops": []}': "device_ref",
            '{"device_ref": "chain(2)", "ops": [{"qubits": [0]}]}': "ops[0]",
            '{"device_ref": "chain(2)", "ops": [{"kind": "rx", "qubits": [0]}]}': (
                "ops[0]"
            ),
            '{"device_ref": "chain(3)", "ops": '
            '[{"kind": "cz", "qubits": [0, 2]}]}': "ops",
        }
        for text, field in cases.items():
            with self.assertRaises(CircuitParseError, msg=text) as ctx:
                circuit_from_json(text)
            self.assertEqual(ctx.exception.field, field, msg=text)
