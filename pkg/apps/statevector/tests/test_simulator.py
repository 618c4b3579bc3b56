"""
Tests for apps.statevector.simulator and apps.statevector.series.

Covers:
  - basis-state construction, bit order and memory budget
  - gate kernels against brute-force dense and tensor oracles
  - norm preservation, commuting-gate order invariance, Ising symmetry
  - expectation values, amplitudes and magnetization
  - per-step observable series
"""

import math

import numpy as np
from django.test import SimpleTestCase
from scipy.stats import unitary_group

from apps.circuits.builders import build_floquet, build_otoc_clifford_ensemble
from apps.circuits.circuit import Circuit, rx, u2
from apps.circuits.devices import chain, grid
from apps.circuits.pauli import parse_pauli, single
from apps.core.exceptions import ResourceError, ValidationError
from apps.statevector import simulator
from apps.statevector.series import evolve_series
from apps.statevector.tests import oracle


class InitBasisTest(SimpleTestCase):
    def test_single_qubit_zero(self) -> None:
        state = simulator.init_basis(1, "0")
        np.testing.assert_array_equal(state.amps, [1, 0])

    def test_bit_order_is_label_rank(self) -> None:
        """First label is the least significant bit of the index."""
        state = simulator.init_basis(2, "10")
        self.assertEqual(int(np.flatnonzero(state.amps)[0]), 1)
        self.assertEqual(simulator.amplitude(state, "10"), 1.0)

    def test_labels_are_sorted(self) -> None:
        state = simulator.init_basis([7, 3])
        self.assertEqual(state.labels, (3, 7))
        self.assertEqual(state.bit(7), 1)

    def test_default_is_all_spins_up(self) -> None:
        state = simulator.init_basis(4)
        self.assertEqual(simulator.average_magnetization(state, [0, 1, 2, 3]), 1.0)

    def test_over_budget_is_refused(self) -> None:
        with self.assertRaises(ResourceError):
            simulator.init_basis(30, budget=1 << 20)

    def test_budget_boundary(self) -> None:
        # 16 bytes per amplitude, twice for headroom
        simulator.init_basis(10, budget=2 * 16 * 1024)
        with self.assertRaises(ResourceError):
            simulator.init_basis(11, budget=2 * 16 * 1024)

    def test_bad_bitstring(self) -> None:
        with self.assertRaises(ValidationError):
            simulator.init_basis(2, "012")
        with self.assertRaises(ValidationError):
            simulator.init_basis(2, "1")


class ApplyTest(SimpleTestCase):
    def test_rx_pi_flips_with_phase(self) -> None:
        circuit = Circuit(chain(1), (rx(0, math.pi),))
        state = simulator.simulate(circuit)
        self.assertAlmostEqual(simulator.amplitude(state, "1"), -1j, places=14)
        self.assertAlmostEqual(abs(simulator.amplitude(state, "0")), 0.0, places=14)

    def test_diagonal_floquet_keeps_z(self) -> None:
        circuit = build_floquet(chain(6), 3, 0.0)
        state = simulator.simulate(circuit)
        for q in range(6):
            self.assertAlmostEqual(
                simulator.expectation(state, single(q)), 1.0, delta=1e-9
            )

    def test_matches_dense_oracle(self) -> None:
        circuit = build_floquet(grid(2, 5), 3, 0.3)
        state = simulator.simulate(circuit)
        for text in ("X4", "Z0", "Y3 Z8", "-X1 X2", "Z5 Z6 Y9"):
            obs = parse_pauli(text)
            self.assertAlmostEqual(
                simulator.expectation(state, obs),
                oracle.dense_expectation(circuit, obs),
                delta=1e-9,
                msg=text,
            )

    def test_matches_tensor_oracle_at_twelve_qubits(self) -> None:
        circuit = build_floquet(grid(3, 4), 4, 0.3)
        state = simulator.simulate(circuit)
        for text in ("Z5", "X0", "Y6 Z7", "X10 Y11"):
            obs = parse_pauli(text)
            self.assertAlmostEqual(
                simulator.expectation(state, obs),
                oracle.tensor_expectation(circuit, obs),
                delta=1e-9,
                msg=text,
            )

    def test_amplitudes_match_oracle(self) -> None:
        circuit = build_floquet(chain(5), 2, 0.7)
        state = simulator.simulate(circuit)
        psi = oracle.dense_state(circuit)
        for bits in ("00000", "10000", "01101", "11111"):
            self.assertAlmostEqual(
                simulator.amplitude(state, bits),
                oracle.dense_amplitude(psi, bits),
                delta=1e-12,
            )

    def test_generic_two_qubit_both_orientations(self) -> None:
        """u2 matrices act on kron(qubits[0], qubits[1]) whichever is higher."""
        m1 = unitary_group.rvs(4, random_state=1)
        m2 = unitary_group.rvs(4, random_state=2)
        ops = [
            rx(0, 0.4, 0),
            rx(3, 1.1, 0),
            u2(3, 2, m1, 1),
            u2(0, 1, m2, 1),
            u2(2, 1, m1, 2),
        ]
        circuit = Circuit(chain(4), tuple(ops))
        state = simulator.simulate(circuit)
        psi = oracle.dense_state(circuit)
        for bits in ("0000", "1000", "0100", "0010", "0001", "1011"):
            self.assertAlmostEqual(
                simulator.amplitude(state, bits),
                oracle.dense_amplitude(psi, bits),
                delta=1e-12,
            )

    def test_entangler_families_match_oracle(self) -> None:
        graph = grid(2, 3)
        for entangler in ("iswap", "sqrt_iswap", "cz"):
            circuit = build_otoc_clifford_ensemble(
                graph, 9, (2, "X"), seed=5, entangler=entangler
            )
            state = simulator.simulate(circuit)
            obs = parse_pauli("Z0 X4")
            self.assertAlmostEqual(
                simulator.expectation(state, obs),
                oracle.dense_expectation(circuit, obs),
                delta=1e-9,
                msg=entangler,
            )

    def test_chunking_does_not_change_result(self) -> None:
        circuit = build_floquet(grid(2, 4), 2, 0.5)
        big = simulator.simulate(circuit)
        small = simulator.simulate(circuit, chunk=4)
        np.testing.assert_allclose(small.amps, big.amps, atol=1e-13)

    def test_norm_preserved(self) -> None:
        circuit = build_floquet(grid(3, 3), 5, 0.9)
        self.assertAlmostEqual(simulator.simulate(circuit).norm(), 1.0, delta=1e-10)
        single_precision = simulator.simulate(circuit, precision="complex64")
        self.assertEqual(single_precision.dtype, np.complex64)
        self.assertAlmostEqual(single_precision.norm(), 1.0, delta=1e-6)

    def test_commuting_gate_order_invariance(self) -> None:
        circuit = build_floquet(grid(2, 4), 2, 0.6)
        reordered = []
        for layer in circuit.layers():
            reordered.extend(reversed(layer))
        other = circuit.with_ops(reordered)
        a = simulator.simulate(circuit).amps
        b = simulator.simulate(other).amps
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_ising_symmetry(self) -> None:
        """The global spin flip commutes with the Floquet step."""
        circuit = build_floquet(grid(2, 4), 3, 0.45)
        up = simulator.simulate(circuit)
        down = simulator.simulate(circuit, bitstring="1" * 8)
        for q in range(8):
            self.assertAlmostEqual(
                simulator.expectation(down, single(q)),
                -simulator.expectation(up, single(q)),
                delta=1e-9,
            )

    def test_unknown_label(self) -> None:
        circuit = build_floquet(chain(3), 1, 0.2)
        state = simulator.init_basis([0, 1])
        with self.assertRaises(ValidationError):
            simulator.apply(state, circuit)


class MeasurementTest(SimpleTestCase):
    def test_x_on_basis_state_is_zero(self) -> None:
        state = simulator.init_basis(3)
        self.assertEqual(simulator.expectation(state, single(1, "X")), 0.0)

    def test_sign_of_negated_observable(self) -> None:
        state = simulator.init_basis(3, "010")
        self.assertEqual(simulator.expectation(state, parse_pauli("Z1")), -1.0)
        self.assertEqual(simulator.expectation(state, parse_pauli("-Z1")), 1.0)

    def test_support_mismatch(self) -> None:
        state = simulator.init_basis(3)
        with self.assertRaises(ValidationError):
            simulator.expectation(state, single(5))

    def test_average_magnetization(self) -> None:
        state = simulator.init_basis(4, "1100")
        self.assertEqual(simulator.average_magnetization(state, [0, 1, 2, 3]), 0.0)
        self.assertEqual(simulator.average_magnetization(state, [0]), -1.0)
        with self.assertRaises(ValidationError):
            simulator.average_magnetization(state, [])


class EvolveSeriesTest(SimpleTestCase):
    def test_series_matches_independent_runs(self) -> None:
        graph = grid(2, 4)
        obs = single(5)
        series = evolve_series(graph, 4, 0.5, obs)
        self.assertEqual([t for t, _ in series], [0, 1, 2, 3, 4])
        self.assertEqual(series[0][1], 1.0)
        for t, value in series[1:]:
            state = simulator.simulate(build_floquet(graph, t, 0.5))
            self.assertAlmostEqual(
                value, simulator.expectation(state, obs), delta=1e-12
            )

    def test_magnetization_series_at_zero_field(self) -> None:
        series = evolve_series(chain(5), 3, 0.0, [0, 1, 2, 3, 4])
        for _, value in series:
            self.assertAlmostEqual(value, 1.0, delta=1e-12)
