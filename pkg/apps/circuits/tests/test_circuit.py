"""
Gate, Pauli-string and circuit IR tests.

Covers:
- gate matrix conventions
- Pauli parsing and dense matrices
- GateOp / Circuit validation, inversion and fingerprints
- the observable catalogue
"""

import math

import numpy as np
from django.test import SimpleTestCase

from apps.circuits import gates
from apps.circuits.circuit import Circuit, GateKind, GateOp, pauli_op, rx, rzz, u1
from apps.circuits.devices import chain, grid
from apps.circuits.observables import CATALOGUE, resolve_observable
from apps.circuits.pauli import PauliString, parse_pauli, single
from apps.core.exceptions import ValidationError


class GateTest(SimpleTestCase):
    def test_rx_convention(self):
        np.testing.assert_allclose(gates.rx(math.pi), -1j * gates.X, atol=1e-15)

    def test_rzz_convention(self):
        phi = 0.3
        expected = np.cos(phi) * np.eye(4) + 1j * np.sin(phi) * gates.pauli_matrix("ZZ")
        np.testing.assert_allclose(gates.rzz(phi), expected, atol=1e-15)
        np.testing.assert_allclose(
            gates.rzz_diagonal(phi), np.diag(gates.rzz(phi)), atol=0
        )

    def test_fixed_gates_are_unitary(self):
        for m in (gates.ISWAP, gates.SQRT_ISWAP, gates.CZ, gates.H, gates.S):
            self.assertTrue(gates.is_unitary(m))
        np.testing.assert_allclose(
            gates.SQRT_ISWAP @ gates.SQRT_ISWAP, gates.ISWAP, atol=1e-15
        )
        self.assertFalse(gates.is_unitary(np.ones((2, 2))))

    def test_pauli_matrix_order(self):
        np.testing.assert_array_equal(
            gates.pauli_matrix("XZ"), np.kron(gates.X, gates.Z)
        )
        self.assertEqual(len(gates.paulis_on(2)), 16)
        self.assertEqual(gates.paulis_on(1)[0], "I")

    def test_single_qubit_cliffords(self):
        group = gates.single_qubit_cliffords()
        self.assertEqual(len(group), 24)
        # each maps Z to ±X, ±Y or ±Z
        for u in group:
            image = u @ gates.Z @ u.conj().T
            hits = [
                p
                for p in ("X", "Y", "Z")
                if np.isclose(abs(np.trace(gates.PAULI_MATRICES[p] @ image)), 2)
            ]
            self.assertEqual(len(hits), 1)

    def test_single_qubit_cliffords_cover_every_class(self):
        actions = {gates.clifford_action(u) for u in gates.single_qubit_cliffords()}
        self.assertEqual(len(actions), 24)
        # X may go to any of the six signed Paulis, and Z to the four orthogonal ones
        x_images = {a[:3] for a in actions}
        self.assertEqual(len(x_images), 6)
        for x_image in x_images:
            z_images = {a[3:] for a in actions if a[:3] == x_image}
            self.assertEqual(len(z_images), 4)

    def test_clifford_action_ignores_global_phase(self):
        u = gates.H @ gates.S
        self.assertEqual(
            gates.clifford_action(np.exp(0.7j) * u), gates.clifford_action(u)
        )
        self.assertEqual(gates.clifford_action(gates.I2), (1, 0, 0, 0, 0, 1))
        self.assertEqual(gates.clifford_action(gates.H), (0, 0, 1, 1, 0, 0))


class PauliStringTest(SimpleTestCase):
    def test_parse_forms(self):
        self.assertEqual(parse_pauli("-X3 Y4"), PauliString({3: "X", 4: "Y"}, -1))
        self.assertEqual(parse_pauli("+y1,z2"), PauliString({1: "Y", 2: "Z"}))
        self.assertEqual(str(parse_pauli("Z10 X2")), "X2 Z10")

    def test_parse_errors(self):
        for text in ("", "Q1", "Z1 Z1", "-"):
            with self.assertRaises(ValidationError, msg=text):
                parse_pauli(text)

    def test_identity_factors_dropped(self):
        p = PauliString({0: "I", 1: "X"})
        self.assertEqual(p.support, (1,))
        self.assertEqual(p, single(1, "X"))
        with self.assertRaises(ValidationError):
            PauliString({0: "X"}, phase=2)

    def test_matrix(self):
        p = parse_pauli("-Z0 X2")
        m = p.matrix((0, 1, 2))
        np.testing.assert_array_equal(m, -gates.pauli_matrix("ZIX"))
        with self.assertRaises(ValidationError):
            p.matrix((0, 1))

    def test_helpers(self):
        p = parse_pauli("X0 Z1 Z2")
        self.assertFalse(p.is_z_only())
        self.assertTrue(p.restricted([1, 2]).is_z_only())
        self.assertEqual(p.negated().phase, -1)
        self.assertEqual(p.weight, 3)


class GateOpTest(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(ValidationError):
            GateOp(GateKind.RX, (0, 1), params=(0.1,))
        with self.assertRaises(ValidationError):
            GateOp(GateKind.RZZ, (0, 0), params=(0.1,))
        with self.assertRaises(ValidationError):
            GateOp(GateKind.CZ, (0, 1), params=(0.1,))
        with self.assertRaises(ValidationError):
            u1(0, np.ones((2, 2)))
        with self.assertRaises(ValidationError):
            pauli_op((0, 1), "X")

    def test_inverse(self):
        for op in (
            rx(0, 0.4),
            rzz(0, 1, 0.7),
            GateOp(GateKind.ISWAP, (0, 1)),
            GateOp(GateKind.SQRT_ISWAP, (0, 1)),
            u1(0, gates.H @ gates.S),
            pauli_op((0,), "Y"),
        ):
            np.testing.assert_allclose(
                op.inverse().unitary() @ op.unitary(),
                np.eye(1 << op.arity),
                atol=1e-12,
                err_msg=str(op.kind),
            )

    def test_diagonal(self):
        self.assertTrue(rzz(0, 1, 0.2).is_diagonal())
        self.assertTrue(rx(0, 0.0).is_diagonal())
        self.assertFalse(rx(0, 0.1).is_diagonal())
        self.assertTrue(pauli_op((0, 1), "ZI").is_diagonal())
        self.assertTrue(u1(0, gates.S).is_diagonal())

    def test_entangling(self):
        self.assertTrue(GateOp(GateKind.CZ, (0, 1)).is_entangling)
        self.assertFalse(pauli_op((0, 1), "XY").is_entangling)
        self.assertFalse(rx(0, 0.1).is_entangling)


class CircuitTest(SimpleTestCase):
    def test_rejects_non_edges_and_clashes(self):
        with self.assertRaises(ValidationError):
            Circuit(chain(3), (rzz(0, 2, 0.1),))
        with self.assertRaises(ValidationError):
            Circuit(chain(3), (rx(0, 0.1, 0), rzz(0, 1, 0.1, 0)))
        with self.assertRaises(ValidationError):
            Circuit(chain(3), (rx(0, 0.1, 2), rx(1, 0.1, 1)))
        with self.assertRaises(ValidationError):
            Circuit(chain(3), (rx(5, 0.1),))

    def test_counts_and_layers(self):
        ops = (
            rx(0, 0.1, 0),
            rx(1, 0.1, 0),
            rzz(0, 1, 0.2, 1),
            pauli_op((2,), "X", 2),
            rzz(1, 2, 0.2, 3),
        )
        circuit = Circuit(chain(4), ops)
        self.assertEqual(circuit.labels, (0, 1, 2, 3))
        self.assertEqual(circuit.touched, (0, 1, 2))
        self.assertEqual(circuit.n_qubits, 3)
        self.assertEqual(circuit.two_qubit_count, 2)
        self.assertEqual(circuit.one_qubit_count, 2)
        self.assertEqual([len(layer) for layer in circuit.layers()], [2, 1, 1, 1])
        self.assertEqual(circuit.two_qubit_layers(), 2)

    def test_inverse_layers_non_decreasing(self):
        ops = (rx(0, 0.1, 0), rzz(0, 1, 0.2, 1), rx(1, 0.3, 2))
        inv = Circuit(chain(2), ops).inverse()
        self.assertEqual([op.layer for op in inv.ops], [0, 1, 2])
        self.assertEqual(inv.ops[0], rx(1, -0.3, 0))
        self.assertTrue(inv.meta["inverted"])

    def test_fingerprint_ignores_meta(self):
        ops = (rzz(0, 1, 0.2),)
        a = Circuit(grid(2, 2), ops, {"seed": 1})
        b = Circuit(grid(2, 2), ops, {"seed": 2})
        c = Circuit(grid(2, 2), (rzz(0, 1, 0.3),))
        self.assertEqual(a.fingerprint, b.fingerprint)
        self.assertNotEqual(a.fingerprint, c.fingerprint)


class ObservableCatalogueTest(SimpleTestCase):
    def test_catalogue_entries(self):
        self.assertEqual(CATALOGUE["z62"].pauli, single(62))
        self.assertEqual(CATALOGUE["stabilizer-62"].start, (62, "Z"))
        self.assertFalse(CATALOGUE["stabilizer-17"].authoritative)
        self.assertEqual(CATALOGUE["magnetization-28"].kind, "magnetization")

    def test_resolve(self):
        self.assertIs(resolve_observable(" z62 "), CATALOGUE["z62"])
        spec = resolve_observable("stabilizer:58Z@5")
        self.assertEqual((spec.start, spec.steps), ((58, "Z"), 5))
        inline = resolve_observable("-X3 Y4")
        self.assertEqual((inline.kind, inline.center), ("pauli", 3))
        with self.assertRaises(ValidationError):
            resolve_observable("nonsense")
