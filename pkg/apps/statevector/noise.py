"""
Monte-Carlo Pauli-noise trajectories.

After every entangling gate a trajectory inserts, with probability ε, one of
the 15 non-identity two-qubit Paulis drawn uniformly. Single-qubit gates are
error-free. Trajectory k draws from its own generator keyed by (seed, k), so
the result is independent of how trajectories are batched.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from apps.circuits.circuit import Circuit, GateOp, pauli_op
from apps.circuits.pauli import PauliString
from apps.core.exceptions import ValidationError
from apps.core.seeds import point_rng
from apps.statevector import simulator

logger = logging.getLogger(__name__)

_LETTERS = "IXYZ"
# index k in 1..15 → two-letter label, first letter on qubits[0]
TWO_QUBIT_PAULIS = tuple(_LETTERS[k >> 2] + _LETTERS[k & 3] for k in range(1, 16))


@dataclass(frozen=True)
class NoiseSpec:
    epsilon: float
    seed: int = 0
    shots: int = 1000

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.shots < 1:
            raise ValidationError(f"shots must be at least 1, got {self.shots}")


def sample_errors(
    circuit: Circuit, noise: NoiseSpec, shot: int
) -> dict[int, str]:
    """Op index → two-qubit Pauli label for the errors of trajectory *shot*."""
    entangling = [i for i, op in enumerate(circuit.ops) if op.is_entangling]
    rng = point_rng(noise.seed, shot)
    hits = rng.random(len(entangling)) < noise.epsilon
    labels = rng.integers(0, len(TWO_QUBIT_PAULIS), size=len(entangling))
    return {
        entangling[j]: TWO_QUBIT_PAULIS[labels[j]] for j in np.flatnonzero(hits)
    }


def _with_errors(circuit: Circuit, errors: dict[int, str]) -> list[GateOp]:
    ops: list[GateOp] = []
    for i, op in enumerate(circuit.ops):
        ops.append(op)
        if i in errors:
            ops.append(pauli_op(op.qubits, errors[i], op.layer))
    return ops


def noisy_expectation(
    circuit: Circuit,
    obs: PauliString,
    noise: NoiseSpec,
    *,
    precision: str | None = None,
    budget: int | None = None,
    chunk: int | None = None,
) -> tuple[float, float]:
    """
    Sample mean and standard error of ⟨obs⟩ over `noise.shots` trajectories.

    Error-free trajectories reuse the ideal value, so ε = 0 returns the exact
    expectation with zero standard error.
    """
    state = simulator.simulate(circuit, precision=precision, budget=budget, chunk=chunk)
    ideal = simulator.expectation(state, obs, chunk=chunk)
    if noise.epsilon == 0.0:
        return ideal, 0.0
    del state

    values = np.empty(noise.shots, dtype=np.float64)
    noisy = 0
    for shot in range(noise.shots):
        errors = sample_errors(circuit, noise, shot)
        if not errors:
            values[shot] = ideal
            continue
        noisy += 1
        state = simulator.init_basis(circuit.labels, precision=precision, budget=budget)
        simulator.apply_ops(state, _with_errors(circuit, errors), chunk=chunk)
        values[shot] = simulator.expectation(state, obs, chunk=chunk)
    mean = float(np.mean(values))
    stderr = (
        float(np.std(values, ddof=1) / math.sqrt(noise.shots))
        if noise.shots > 1
        else 0.0
    )
    logger.info(
        "Noisy <%s>: %d/%d trajectories hit, mean %.6f ± %.6f (ideal %.6f)",
        obs,
        noisy,
        noise.shots,
        mean,
        stderr,
        ideal,
    )
    return mean, stderr


__all__ = ["TWO_QUBIT_PAULIS", "NoiseSpec", "noisy_expectation", "sample_errors"]
