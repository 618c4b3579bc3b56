"""
Backward light cones and light-cone pruning.

The cone is built by sweeping the circuit from the last gate to the first
while tracking the frontier: the qubits on which the Heisenberg-evolved
observable may act non-trivially.

    single-qubit gate   enters when its qubit is in the frontier
    two-qubit gate      enters when either qubit is in the frontier; both
                        qubits then join the frontier

Consecutive diagonal two-qubit gates commute, so a run of them is treated as
one block and each gate in it is tested against the frontier at the block's
end. A layer of RZZ colours therefore widens the cone by one hop, not three.

With commutation_aware=True the sweep also tracks qubits on which every term
of the evolved observable is diagonal. Diagonal gates acting only on such
qubits (or outside the frontier) commute with the observable and stay out.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass

from apps.circuits.builders import step_boundaries
from apps.circuits.circuit import Circuit, GateOp
from apps.circuits.pauli import PauliString
from apps.core.exceptions import StaleConeError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LightCone:
    """
    frontiers[0] is the observable support at measurement time and
    frontiers[k] the frontier k segments earlier (Floquet steps for Floquet
    circuits, layers otherwise). frontiers[-1] is the cone at t = 0.
    """

    observable: PauliString
    fingerprint: str
    frontiers: tuple[frozenset[int], ...]
    gate_ids: frozenset[int]
    volume: int
    commutation_aware: bool = False

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(sorted(self.frontiers[-1]))

    @property
    def sizes(self) -> list[int]:
        return [len(f) for f in self.frontiers]


def _segments(circuit: Circuit) -> list[tuple[int, int]]:
    """Half-open op ranges per Floquet step, or per layer for other circuits."""
    if circuit.meta.get("builder") == "floquet" and "layers_per_step" in circuit.meta:
        ends = step_boundaries(circuit)
    else:
        ends = []
        for i, op in enumerate(circuit.ops):
            if i + 1 == len(circuit.ops) or circuit.ops[i + 1].layer != op.layer:
                ends.append(i + 1)
    if not ends:
        return []
    starts = [0, *ends[:-1]]
    return list(zip(starts, ends, strict=True))


def _blocks(ops: tuple[GateOp, ...], start: int, stop: int) -> Iterator[list[int]]:
    """Op indices of [start, stop) grouped into commuting blocks, last first."""
    i = stop - 1
    while i >= start:
        op = ops[i]
        if op.is_two_qubit and op.is_diagonal():
            j = i
            while j > start and ops[j - 1].is_two_qubit and ops[j - 1].is_diagonal():
                j -= 1
            yield list(range(i, j - 1, -1))
            i = j - 1
        else:
            yield [i]
            i -= 1


class _Sweep:
    def __init__(self, obs: PauliString, commutation_aware: bool) -> None:
        self.aware = commutation_aware
        self.frontier = set(obs.support)
        # qubits whose evolved content is diagonal in every term
        self.diagonal = {q for q, p in obs.paulis.items() if p == "Z"}
        self.gates: set[int] = set()

    def _active(self, q: int) -> bool:
        if q not in self.frontier:
            return False
        return not (self.aware and q in self.diagonal)

    def enters(self, op: GateOp) -> bool:
        if self.aware and op.is_diagonal():
            return any(self._active(q) for q in op.qubits)
        return any(q in self.frontier for q in op.qubits)

    def absorb(self, index: int, op: GateOp) -> None:
        self.gates.add(index)
        diagonal = op.is_diagonal()
        for q in op.qubits:
            if q not in self.frontier:
                self.frontier.add(q)
                if diagonal:
                    self.diagonal.add(q)
        if not diagonal:
            self.diagonal.difference_update(op.qubits)


def backward_lightcone(
    circuit: Circuit, obs: PauliString, *, commutation_aware: bool = False
) -> LightCone:
    """
    Exact causal cone of *obs* measured at the end of *circuit*.

    Gates are visited backward one segment at a time. Within a segment a run
    of consecutive diagonal two-qubit gates is one block: every gate of the
    block is tested against the frontier as it stood after the block, so a
    diagonal gate enters only when it touches that frontier directly. Other
    gates are tested one at a time against the running frontier.
    """
    if obs.weight == 0:
        raise ValidationError("observable has empty support")
    missing = [q for q in obs.support if q not in circuit.graph]
    if missing:
        raise ValidationError(f"observable qubits {missing} are not on the device")

    sweep = _Sweep(obs, commutation_aware)
    frontiers = [frozenset(sweep.frontier)]
    for start, stop in reversed(_segments(circuit)):
        for block in _blocks(circuit.ops, start, stop):
            entering = [i for i in block if sweep.enters(circuit.ops[i])]
            for i in entering:
                sweep.absorb(i, circuit.ops[i])
        frontiers.append(frozenset(sweep.frontier))

    gate_ids = frozenset(sweep.gates)
    volume = sum(1 for i in gate_ids if circuit.ops[i].is_entangling)
    logger.debug(
        "Light cone of %s: %d qubits, %d gates (%d entangling)",
        obs,
        len(frontiers[-1]),
        len(gate_ids),
        volume,
    )
    return LightCone(
        observable=obs,
        fingerprint=circuit.fingerprint,
        frontiers=tuple(frontiers),
        gate_ids=gate_ids,
        volume=volume,
        commutation_aware=commutation_aware,
    )


def prune_to_lightcone(circuit: Circuit, cone: LightCone) -> Circuit:
    """Sub-circuit of the gates in *cone* on the induced subgraph of its qubits."""
    if cone.fingerprint != circuit.fingerprint:
        raise StaleConeError("light cone was computed for a different circuit")
    ops = [op for i, op in enumerate(circuit.ops) if i in cone.gate_ids]
    graph = circuit.graph.subgraph(cone.qubits)
    return circuit.with_ops(ops, graph=graph, pruned=True, cone_qubits=len(graph))


__all__ = ["LightCone", "backward_lightcone", "prune_to_lightcone"]
