"""
Tensor networks built from circuits.

Every k-qubit gate becomes one rank-2k tensor with legs ordered
(outputs..., inputs...) in the gate's qubit order, so its data is the gate
matrix reshaped to (2,) * 2k. Wires are indices of dimension 2. Each input
wire starts on a rank-1 basis vector; each output wire either ends on a rank-1
projection (closed) or stays free (open).

Index ids are small consecutive integers; planners treat a tensor's legs as a
bitmask over them.
"""

import enum
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from apps.circuits.builders import fuse_single_qubit_gates
from apps.circuits.circuit import Circuit
from apps.circuits.gates import PAULI_MATRICES
from apps.circuits.pauli import PauliString
from apps.core.exceptions import ValidationError

_BASIS = (
    np.array([1.0, 0.0], dtype=np.complex128),
    np.array([0.0, 1.0], dtype=np.complex128),
)


class ContractionMode(enum.StrEnum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class Tensor:
    indices: tuple[int, ...]
    data: np.ndarray = field(repr=False, compare=False)
    tag: str = "gate"

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def legs(self) -> int:
        mask = 0
        for i in self.indices:
            mask |= 1 << i
        return mask


@dataclass(frozen=True)
class TensorNetwork:
    tensors: tuple[Tensor, ...]
    open_indices: tuple[int, ...] = ()
    open_qubits: tuple[int, ...] = ()
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.tensors)

    @property
    def n_indices(self) -> int:
        return 1 + max((i for t in self.tensors for i in t.indices), default=-1)

    def legs(self) -> list[int]:
        return [t.legs for t in self.tensors]

    def gate_tensors(self) -> list[Tensor]:
        return [t for t in self.tensors if t.tag == "gate"]

    def check(self) -> None:
        """Every index sits on at most two tensors; open indices on exactly one."""
        counts = Counter(i for t in self.tensors for i in t.indices)
        crowded = [i for i, c in counts.items() if c > 2]
        if crowded:
            raise ValidationError(f"indices {sorted(crowded)} sit on > 2 tensors")
        for i in self.open_indices:
            if counts.get(i) != 1:
                raise ValidationError(f"open index {i} must sit on exactly one tensor")


def _bits(bitstring: str | None, n: int, what: str) -> str:
    if bitstring is None:
        return "0" * n
    if len(bitstring) != n or set(bitstring) - {"0", "1"}:
        raise ValidationError(
            f"{what} bitstring {bitstring!r} must have {n} characters of 0/1"
        )
    return bitstring


class _Builder:
    def __init__(self, labels: Sequence[int], initial: str) -> None:
        self.labels = tuple(labels)
        self.tensors: list[Tensor] = []
        self.wire: dict[int, int] = {}
        self._next = 0
        for q, bit in zip(self.labels, initial, strict=True):
            idx = self._new()
            self.tensors.append(Tensor((idx,), _BASIS[int(bit)], "input"))
            self.wire[q] = idx

    def _new(self) -> int:
        idx = self._next
        self._next += 1
        return idx

    def gate(
        self, qubits: Sequence[int], matrix: np.ndarray, tag: str = "gate"
    ) -> None:
        k = len(qubits)
        ins = [self.wire[q] for q in qubits]
        outs = [self._new() for _ in qubits]
        data = np.asarray(matrix, dtype=np.complex128).reshape((2,) * (2 * k))
        self.tensors.append(Tensor(tuple(outs + ins), data, tag))
        for q, idx in zip(qubits, outs, strict=True):
            self.wire[q] = idx

    def finish(
        self, final: str, open_qubits: Iterable[int] = (), **meta: Any
    ) -> TensorNetwork:
        keep = set(open_qubits)
        open_indices = []
        for q, bit in zip(self.labels, final, strict=True):
            if q in keep:
                open_indices.append(self.wire[q])
            else:
                self.tensors.append(Tensor((self.wire[q],), _BASIS[int(bit)], "output"))
        return TensorNetwork(
            tensors=tuple(self.tensors),
            open_indices=tuple(open_indices),
            open_qubits=tuple(q for q in self.labels if q in keep),
            meta=meta,
        )


def network_from_circuit(
    circuit: Circuit,
    mode: ContractionMode | str = ContractionMode.CLOSED,
    *,
    bitstring: str | None = None,
    obs: PauliString | None = None,
    open_qubits: Iterable[int] | None = None,
    initial: str | None = None,
    fuse: bool = False,
) -> TensorNetwork:
    """
    Amplitude network ⟨b|U|initial⟩ over the circuit's labels.

    closed  every output projected onto *bitstring* (default all zeros)
    open    outputs on obs.support (or *open_qubits*) left free; the rest are
            projected onto their *bitstring* characters

    With *fuse* single-qubit gates are folded into neighbouring two-qubit
    gates first, so the network holds one tensor per two-qubit gate.
    """
    mode = ContractionMode(mode)
    labels = circuit.labels
    final = _bits(bitstring, len(labels), "output")
    start = _bits(initial, len(labels), "input")
    free: tuple[int, ...] = ()
    if mode is ContractionMode.OPEN:
        if open_qubits is not None:
            free = tuple(sorted(set(open_qubits)))
        elif obs is not None:
            free = obs.support
        else:
            raise ValidationError("open mode needs an observable or open qubits")
        missing = [q for q in free if q not in circuit.graph]
        if missing:
            raise ValidationError(f"open qubits {missing} are not in the circuit")

    source = fuse_single_qubit_gates(circuit) if fuse else circuit
    builder = _Builder(labels, start)
    for op in source.ops:
        builder.gate(op.qubits, op.unitary())
    return builder.finish(
        final, free, mode=str(mode), fingerprint=circuit.fingerprint, fused=fuse
    )


def sandwich_network(circuit: Circuit, obs: PauliString) -> TensorNetwork:
    """Closed network for ⟨0|U† O U|0⟩; contracting it gives ⟨O⟩ directly."""
    missing = [q for q in obs.support if q not in circuit.graph]
    if missing:
        raise ValidationError(f"observable qubits {missing} are not in the circuit")
    labels = circuit.labels
    zeros = "0" * len(labels)
    builder = _Builder(labels, zeros)
    for op in circuit.ops:
        builder.gate(op.qubits, op.unitary())
    for k, (q, p) in enumerate(obs.paulis.items()):
        factor = PAULI_MATRICES[p] * (obs.phase if k == 0 else 1)
        builder.gate((q,), factor, "observable")
    for op in reversed(circuit.ops):
        builder.gate(op.qubits, op.unitary().conj().T)
    return builder.finish(zeros, mode="sandwich", fingerprint=circuit.fingerprint)


__all__ = [
    "ContractionMode",
    "Tensor",
    "TensorNetwork",
    "network_from_circuit",
    "sandwich_network",
]
