"""
Circuit intermediate representation.

A Circuit is an ordered tuple of GateOps over a DeviceGraph. Layer indices
are non-decreasing and ops sharing a layer act on disjoint qubits. The op
order is the execution order; layers only group ops that may run together.
"""

import enum
import functools
import hashlib
import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from apps.circuits import gates
from apps.circuits.devices import DeviceGraph
from apps.core.exceptions import ValidationError


class GateKind(enum.StrEnum):
    RX = "rx"
    RZZ = "rzz"
    ISWAP = "iswap"
    SQRT_ISWAP = "sqrt_iswap"
    CZ = "cz"
    U1 = "u1"
    U2 = "u2"
    PAULI = "pauli"


_ARITY = {
    GateKind.RX: 1,
    GateKind.RZZ: 2,
    GateKind.ISWAP: 2,
    GateKind.SQRT_ISWAP: 2,
    GateKind.CZ: 2,
    GateKind.U1: 1,
    GateKind.U2: 2,
}
_N_PARAMS = {GateKind.RX: 1, GateKind.RZZ: 1}
_FIXED = {
    GateKind.ISWAP: gates.ISWAP,
    GateKind.SQRT_ISWAP: gates.SQRT_ISWAP,
    GateKind.CZ: gates.CZ,
}


@dataclass(frozen=True)
class GateOp:
    """One gate application. `matrix` holds row-major entries for u1/u2."""

    kind: GateKind
    qubits: tuple[int, ...]
    layer: int = 0
    params: tuple[float, ...] = ()
    matrix: tuple[complex, ...] | None = None
    pauli: str = ""

    def __post_init__(self) -> None:
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValidationError(f"{kind} acts twice on one qubit: {self.qubits}")
        if kind is GateKind.PAULI:
            if len(self.pauli) != len(self.qubits) or not 1 <= len(self.qubits) <= 2:
                raise ValidationError(
                    f"pauli op needs one letter per qubit on 1–2 qubits, "
                    f"got {self.pauli!r} on {self.qubits}"
                )
            if set(self.pauli) - set("IXYZ"):
                raise ValidationError(f"bad Pauli label {self.pauli!r}")
        elif len(self.qubits) != _ARITY[kind]:
            raise ValidationError(
                f"{kind} takes {_ARITY[kind]} qubit(s), got {len(self.qubits)}"
            )
        if len(self.params) != _N_PARAMS.get(kind, 0):
            raise ValidationError(
                f"{kind} takes {_N_PARAMS.get(kind, 0)} parameter(s), "
                f"got {len(self.params)}"
            )
        if kind in (GateKind.U1, GateKind.U2):
            if self.matrix is None:
                raise ValidationError(f"{kind} needs a matrix")
            dim = 1 << len(self.qubits)
            entries = tuple(complex(v) for v in self.matrix)
            if len(entries) != dim * dim:
                raise ValidationError(f"{kind} matrix needs {dim * dim} entries")
            object.__setattr__(self, "matrix", entries)
            if not gates.is_unitary(np.array(entries).reshape(dim, dim)):
                raise ValidationError(f"{kind} matrix on {self.qubits} is not unitary")
        elif self.matrix is not None:
            raise ValidationError(f"{kind} does not take a matrix")

    @property
    def arity(self) -> int:
        return len(self.qubits)

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2

    @property
    def is_entangling(self) -> bool:
        """Two-qubit gates other than Pauli errors count towards volume."""
        return self.is_two_qubit and self.kind is not GateKind.PAULI

    def unitary(self) -> np.ndarray:
        kind = self.kind
        if kind is GateKind.RX:
            return gates.rx(self.params[0])
        if kind is GateKind.RZZ:
            return gates.rzz(self.params[0])
        if kind is GateKind.PAULI:
            return gates.pauli_matrix(self.pauli)
        if kind in _FIXED:
            return _FIXED[kind].copy()
        dim = 1 << len(self.qubits)
        return np.array(self.matrix, dtype=np.complex128).reshape(dim, dim)

    def is_diagonal(self) -> bool:
        if self.kind in (GateKind.RZZ, GateKind.CZ):
            return True
        if self.kind is GateKind.PAULI:
            return set(self.pauli) <= {"I", "Z"}
        if self.kind is GateKind.RX:
            return bool(np.isclose(np.sin(self.params[0] / 2), 0.0, atol=1e-15))
        u = self.unitary()
        return bool(np.allclose(u, np.diag(np.diag(u)), atol=1e-15, rtol=0))

    def inverse(self) -> "GateOp":
        if self.kind in (GateKind.RX, GateKind.RZZ):
            return replace(self, params=(-self.params[0],))
        if self.kind in (GateKind.CZ, GateKind.PAULI):
            return self
        kind = GateKind.U1 if self.arity == 1 else GateKind.U2
        inv = self.unitary().conj().T
        return GateOp(kind, self.qubits, self.layer, matrix=tuple(inv.ravel()))

    def at_layer(self, layer: int) -> "GateOp":
        return replace(self, layer=layer)

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "kind": str(self.kind),
            "qubits": list(self.qubits),
            "layer": self.layer,
            "params": list(self.params),
        }
        if self.matrix is not None:
            doc["matrix"] = [[v.real, v.imag] for v in self.matrix]
        if self.pauli:
            doc["pauli"] = self.pauli
        return doc


def rx(qubit: int, theta: float, layer: int = 0) -> GateOp:
    return GateOp(GateKind.RX, (qubit,), layer, (theta,))


def rzz(a: int, b: int, phi: float, layer: int = 0) -> GateOp:
    return GateOp(GateKind.RZZ, (a, b), layer, (phi,))


def u1(qubit: int, matrix: np.ndarray, layer: int = 0) -> GateOp:
    return GateOp(GateKind.U1, (qubit,), layer, matrix=tuple(np.ravel(matrix)))


def u2(a: int, b: int, matrix: np.ndarray, layer: int = 0) -> GateOp:
    return GateOp(GateKind.U2, (a, b), layer, matrix=tuple(np.ravel(matrix)))


def pauli_op(qubits: Iterable[int], label: str, layer: int = 0) -> GateOp:
    return GateOp(GateKind.PAULI, tuple(qubits), layer, pauli=label)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a device graph plus builder provenance."""

    graph: DeviceGraph
    ops: tuple[GateOp, ...] = ()
    meta: Mapping[str, Any] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "meta", dict(self.meta))
        layer = None
        busy: set[int] = set()
        for i, op in enumerate(self.ops):
            for q in op.qubits:
                if q not in self.graph:
                    raise ValidationError(f"op #{i} uses qubit {q} not on the device")
            if op.is_two_qubit and not self.graph.has_edge(*op.qubits):
                raise ValidationError(
                    f"op #{i} couples {op.qubits} which is not a device edge"
                )
            if layer is not None and op.layer < layer:
                raise ValidationError(
                    f"op #{i} has layer {op.layer} after layer {layer}"
                )
            if op.layer != layer:
                layer, busy = op.layer, set()
            clash = busy.intersection(op.qubits)
            if clash:
                raise ValidationError(
                    f"op #{i} reuses qubit(s) {sorted(clash)} inside layer {op.layer}"
                )
            busy.update(op.qubits)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.ops)

    @property
    def labels(self) -> tuple[int, ...]:
        """All device qubits the circuit is defined over (simulation order)."""
        return self.graph.nodes

    @functools.cached_property
    def touched(self) -> tuple[int, ...]:
        return tuple(sorted({q for op in self.ops for q in op.qubits}))

    @property
    def n_qubits(self) -> int:
        return len(self.touched)

    @property
    def two_qubit_count(self) -> int:
        return sum(1 for op in self.ops if op.is_entangling)

    @property
    def one_qubit_count(self) -> int:
        return sum(
            1 for op in self.ops if op.arity == 1 and op.kind is not GateKind.PAULI
        )

    def layers(self) -> list[list[GateOp]]:
        grouped: list[list[GateOp]] = []
        current = None
        for op in self.ops:
            if op.layer != current:
                grouped.append([])
                current = op.layer
            grouped[-1].append(op)
        return grouped

    def two_qubit_layers(self) -> int:
        return sum(
            1 for layer in self.layers() if any(op.is_entangling for op in layer)
        )

    def with_ops(
        self,
        ops: Iterable[GateOp],
        graph: DeviceGraph | None = None,
        **meta: Any,
    ) -> "Circuit":
        return Circuit(graph or self.graph, tuple(ops), {**self.meta, **meta})

    def inverse(self) -> "Circuit":
        """Adjoint circuit; layers are renumbered so they stay non-decreasing."""
        top = self.ops[-1].layer if self.ops else 0
        ops = [op.inverse().at_layer(top - op.layer) for op in reversed(self.ops)]
        return self.with_ops(ops, inverted=True)

    @functools.cached_property
    def fingerprint(self) -> str:
        """Stable digest of device and ops (meta excluded)."""
        doc = {
            "nodes": list(self.graph.nodes),
            "edges": [list(e) for e in self.graph.edges],
            "ops": [op.to_dict() for op in self.ops],
        }
        blob = json.dumps(doc, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


__all__ = [
    "Circuit",
    "GateKind",
    "GateOp",
    "pauli_op",
    "rx",
    "rzz",
    "u1",
    "u2",
]
