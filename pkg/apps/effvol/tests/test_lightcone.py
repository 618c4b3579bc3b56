"""
Light-cone and pruning tests.

Covers:
- cone sizes on the heavy-hex Floquet circuit
- frontier monotonicity and containment
- pruning exactness against dense simulation of the full circuit
- stale cones
"""

import math
import os
import unittest

import numpy as np
from django.test import SimpleTestCase, tag
from scipy.stats import unitary_group

from apps.circuits.builders import build_floquet
from apps.circuits.circuit import Circuit, GateKind, GateOp, rx, rzz, u1, u2
from apps.circuits.devices import DeviceGraph, chain, grid, heavy_hex_127
from apps.circuits.observables import CATALOGUE
from apps.circuits.pauli import PauliString, parse_pauli, single
from apps.clifford.propagation import CLIFFORD_THETA, derive_stabilizer_observable
from apps.core.exceptions import StaleConeError, ValidationError
from apps.effvol.lightcone import backward_lightcone, prune_to_lightcone
from apps.statevector import simulator

RUN_HEAVY = os.environ.get("EFFVOL_RUN_HEAVY") == "1"


def random_circuit(
    graph: DeviceGraph, depth: int, rng: np.random.Generator
) -> Circuit:
    """Layers of random one- and two-qubit gates, diagonal runs included."""
    ops: list[GateOp] = []
    for layer in range(depth):
        free = set(graph.nodes)
        edges = list(graph.edges)
        rng.shuffle(edges)
        for a, b in edges:
            if a not in free or b not in free or rng.random() < 0.4:
                continue
            free -= {a, b}
            pick = rng.integers(5)
            if pick == 0:
                ops.append(u2(a, b, unitary_group.rvs(4, random_state=rng), layer))
            elif pick == 1:
                ops.append(GateOp(GateKind.SQRT_ISWAP, (a, b), layer))
            elif pick == 2:
                ops.append(GateOp(GateKind.CZ, (a, b), layer))
            else:
                ops.append(rzz(a, b, float(rng.uniform(-np.pi, np.pi)), layer))
        for q in sorted(free):
            if rng.random() < 0.5:
                ops.append(rx(q, float(rng.uniform(0, np.pi)), layer))
            elif rng.random() < 0.5:
                ops.append(u1(q, unitary_group.rvs(2, random_state=rng), layer))
    return Circuit(graph, tuple(ops))


def random_pauli(labels, rng: np.random.Generator) -> PauliString:
    size = int(rng.integers(1, 4))
    qubits = rng.choice(labels, size=size, replace=False)
    return PauliString({int(q): str(rng.choice(list("XYZ"))) for q in qubits})


class HeavyHexConeTest(SimpleTestCase):
    def test_twenty_steps_cover_device(self) -> None:
        circuit = build_floquet(heavy_hex_127(), 20, math.pi / 4)
        cone = backward_lightcone(circuit, single(62))
        self.assertEqual(len(cone.qubits), 127)
        self.assertEqual(circuit.two_qubit_count, 2880)
        self.assertEqual(cone.volume, 1811)
        self.assertEqual(len(cone.frontiers), 21)

    def test_five_steps(self) -> None:
        circuit = build_floquet(heavy_hex_127(), 5, math.pi / 4)
        cone = backward_lightcone(circuit, single(62))
        self.assertEqual(len(cone.qubits), 31)
        self.assertEqual(cone.sizes[0], 1)
        dist = heavy_hex_127().distances_from(62)
        self.assertEqual(set(cone.qubits), {q for q, d in dist.items() if d <= 5})

    def test_commutation_aware_five_steps(self) -> None:
        circuit = build_floquet(heavy_hex_127(), 5, math.pi / 4)
        cone = backward_lightcone(circuit, single(62), commutation_aware=True)
        self.assertEqual(len(cone.qubits), 19)
        plain = backward_lightcone(circuit, single(62))
        self.assertLessEqual(cone.gate_ids, plain.gate_ids)

    def test_zero_steps(self) -> None:
        circuit = build_floquet(heavy_hex_127(), 0, 0.3)
        cone = backward_lightcone(circuit, parse_pauli("Z62 X63"))
        self.assertEqual(cone.frontiers, (frozenset({62, 63}),))
        self.assertEqual(cone.gate_ids, frozenset())
        pruned = prune_to_lightcone(circuit, cone)
        self.assertEqual(len(pruned), 0)
        self.assertEqual(pruned.labels, (62, 63))


class ConeStructureTest(SimpleTestCase):
    def test_frontiers_grow_backward(self) -> None:
        rng = np.random.default_rng(3)
        for _ in range(20):
            circuit = random_circuit(grid(3, 4), 6, rng)
            cone = backward_lightcone(circuit, random_pauli(circuit.labels, rng))
            for later, earlier in zip(cone.frontiers, cone.frontiers[1:], strict=False):
                self.assertLessEqual(later, earlier)

    def test_larger_support_contains_smaller(self) -> None:
        circuit = build_floquet(grid(4, 4), 3, 0.7)
        small = backward_lightcone(circuit, single(5))
        large = backward_lightcone(circuit, parse_pauli("Z5 X10"))
        self.assertLessEqual(small.gate_ids, large.gate_ids)
        self.assertLessEqual(set(small.qubits), set(large.qubits))

    def test_gates_touch_cone_qubits(self) -> None:
        circuit = build_floquet(grid(4, 4), 2, 0.7)
        cone = backward_lightcone(circuit, single(0))
        for i in cone.gate_ids:
            self.assertLessEqual(set(circuit.ops[i].qubits), set(cone.qubits))

    def test_full_cone_keeps_circuit(self) -> None:
        circuit = build_floquet(grid(2, 2), 2, 0.7)
        cone = backward_lightcone(circuit, parse_pauli("Z0 Z3"))
        pruned = prune_to_lightcone(circuit, cone)
        self.assertEqual(pruned.ops, circuit.ops)
        self.assertEqual(pruned.labels, circuit.labels)

    def test_diagonal_run_is_one_block(self) -> None:
        ops = [rx(q, 0.7, 0) for q in range(4)]
        ops += [rzz(1, 2, 0.4, 1), rzz(0, 1, 0.9, 1)]
        circuit = Circuit(chain(4), tuple(ops))
        obs = single(0, "X")
        cone = backward_lightcone(circuit, obs)
        # rzz(1, 2) commutes past rzz(0, 1) and never reaches qubit 0
        self.assertEqual(cone.qubits, (0, 1))
        self.assertEqual(cone.volume, 1)
        pruned = prune_to_lightcone(circuit, cone)
        full = simulator.expectation(simulator.simulate(circuit), obs)
        cut = simulator.expectation(simulator.simulate(pruned), obs)
        self.assertAlmostEqual(cut, full, delta=1e-9)

    def test_errors(self) -> None:
        circuit = build_floquet(grid(2, 2), 1, 0.7)
        with self.assertRaises(ValidationError):
            backward_lightcone(circuit, single(9))
        with self.assertRaises(ValidationError):
            backward_lightcone(circuit, single(0).restricted([]))
        cone = backward_lightcone(circuit, single(0))
        other = build_floquet(grid(2, 2), 1, 0.8)
        with self.assertRaises(StaleConeError):
            prune_to_lightcone(other, cone)


class PruningExactnessTest(SimpleTestCase):
    """⟨O⟩ on the pruned circuit equals ⟨O⟩ on the full one."""

    def _check(self, circuit: Circuit, obs: PauliString, aware: bool) -> None:
        full = simulator.expectation(simulator.simulate(circuit), obs)
        cone = backward_lightcone(circuit, obs, commutation_aware=aware)
        pruned = prune_to_lightcone(circuit, cone)
        value = simulator.expectation(simulator.simulate(pruned), obs)
        self.assertAlmostEqual(value, full, delta=1e-9, msg=f"{obs} aware={aware}")

    def test_random_circuits(self) -> None:
        rng = np.random.default_rng(2024)
        graph = grid(3, 4)
        for trial in range(120):
            circuit = random_circuit(graph, int(rng.integers(1, 7)), rng)
            obs = random_pauli(circuit.labels, rng)
            self._check(circuit, obs, aware=bool(trial % 2))

    def test_floquet_circuits(self) -> None:
        graph = grid(3, 4)
        for theta in (0.0, 0.3, math.pi / 4, CLIFFORD_THETA):
            circuit = build_floquet(graph, 4, theta)
            for obs in (single(5), parse_pauli("X0 Z11"), parse_pauli("Y6")):
                self._check(circuit, obs, aware=False)
                self._check(circuit, obs, aware=True)

    @tag("slow")
    def test_many_random_circuits(self) -> None:
        rng = np.random.default_rng(7)
        graph = grid(2, 7)
        for trial in range(1000):
            circuit = random_circuit(graph, int(rng.integers(1, 9)), rng)
            self._check(circuit, random_pauli(circuit.labels, rng), bool(trial % 2))

    @tag("slow")
    @unittest.skipUnless(RUN_HEAVY, "set EFFVOL_RUN_HEAVY=1")
    def test_pruned_heavy_hex_stabilizer(self) -> None:
        spec = CATALOGUE["stabilizer-10"]
        obs = derive_stabilizer_observable(heavy_hex_127(), spec.steps, spec.start)
        circuit = build_floquet(heavy_hex_127(), spec.steps, CLIFFORD_THETA)
        cone = backward_lightcone(circuit, obs, commutation_aware=True)
        pruned = prune_to_lightcone(circuit, cone)
        value = simulator.expectation(simulator.simulate(pruned), obs)
        self.assertAlmostEqual(value, 1.0, delta=1e-9)
