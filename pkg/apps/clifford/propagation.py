"""
Pauli-string propagation through Clifford circuits.
"""

import enum
import logging
import math

from apps.circuits.builders import build_floquet
from apps.circuits.circuit import Circuit
from apps.circuits.devices import DeviceGraph
from apps.circuits.pauli import PauliString, single
from apps.clifford.tableau import StabilizerTableau
from apps.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

# θ_h at which the Floquet step is Clifford
CLIFFORD_THETA = math.pi / 2


class Direction(enum.StrEnum):
    HEISENBERG = "heisenberg_forward"
    SCHRODINGER = "schrodinger"


def propagate_pauli(
    circuit: Circuit,
    pauli: PauliString,
    direction: Direction | str = Direction.HEISENBERG,
) -> PauliString:
    """
    heisenberg_forward  U† P U  (gates last to first, each inverted)
    schrodinger         U P U†  (gates first to last)
    """
    direction = Direction(direction)
    if pauli.weight == 0:
        raise ValidationError("cannot propagate an empty Pauli string")
    tab = StabilizerTableau.from_paulis(circuit.labels, [pauli])
    tab.apply_circuit(circuit, heisenberg=direction is Direction.HEISENBERG)
    return tab.row(0)


def derive_stabilizer_observable(
    graph: DeviceGraph, steps: int, start: tuple[int, str]
) -> PauliString:
    """
    Evolve the single-qubit Pauli *start* through `steps` θ_h = π/2 Floquet
    steps. The result stabilizes the evolved all-up state with eigenvalue +1.
    """
    qubit, letter = start
    if qubit not in graph:
        raise ValidationError(f"start qubit {qubit} is not on the device")
    circuit = build_floquet(graph, steps, CLIFFORD_THETA)
    derived = propagate_pauli(circuit, single(qubit, letter), Direction.SCHRODINGER)
    logger.debug(
        "Derived %d-qubit stabilizer from %s%d after %d steps",
        derived.weight,
        letter,
        qubit,
        steps,
    )
    return derived


__all__ = [
    "CLIFFORD_THETA",
    "Direction",
    "derive_stabilizer_observable",
    "propagate_pauli",
]
