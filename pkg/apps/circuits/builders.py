"""
Circuit builders.

    build_floquet                  kicked transverse-field Ising circuit
    build_otoc_clifford_ensemble   iSWAP / random single-qubit Clifford OTOC circuits
    fuse_single_qubit_gates        fold 1q gates into neighbouring 2q gates

Builders are pure functions of their inputs and seed.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Sequence

import networkx as nx
import numpy as np

from apps.circuits import gates
from apps.circuits.circuit import Circuit, GateKind, GateOp, pauli_op, rx, rzz, u1, u2
from apps.circuits.devices import DeviceGraph
from apps.core.exceptions import ValidationError
from apps.core.seeds import point_rng

logger = logging.getLogger(__name__)

RZZ_ANGLE = math.pi / 4

ENTANGLERS = {
    "iswap": GateKind.ISWAP,
    "sqrt_iswap": GateKind.SQRT_ISWAP,
    "cz": GateKind.CZ,
}

# ---------------------------------------------------------------------------
# Edge colouring
# ---------------------------------------------------------------------------


def edge_coloring(graph: DeviceGraph) -> list[list[tuple[int, int]]]:
    """
    Partition edges into matchings by greedy colouring of the line graph,
    visiting edges in sorted label order. Heavy-hex needs exactly 3 colours.
    """
    if not graph.edges:
        return []
    line = nx.line_graph(graph.nx_graph)
    key = lambda e: (min(e), max(e))  # noqa: E731
    colors = nx.greedy_color(line, strategy=lambda g, _: sorted(g, key=key))
    classes: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for edge, color in colors.items():
        classes[color].append(key(edge))
    return [sorted(classes[c]) for c in sorted(classes)]


# ---------------------------------------------------------------------------
# Floquet Ising
# ---------------------------------------------------------------------------


def build_floquet(
    graph: DeviceGraph,
    steps: int,
    theta_h: float,
    *,
    rzz_angle: float = RZZ_ANGLE,
) -> Circuit:
    """
    `steps` repetitions of: RX(θ_h) on every qubit, then RZZ(π/4) on every
    edge, one layer per edge colour.
    """
    if steps < 0:
        raise ValidationError(f"steps must be non-negative, got {steps}")
    flagged = not (0.0 <= theta_h <= math.pi / 2)
    if flagged:
        logger.warning("theta_h=%.6f lies outside [0, pi/2]", theta_h)
    colors = edge_coloring(graph)
    per_step = 1 + len(colors)
    ops: list[GateOp] = []
    for step in range(steps):
        base = step * per_step
        ops.extend(rx(q, theta_h, base) for q in graph.nodes)
        for c, matching in enumerate(colors):
            ops.extend(rzz(a, b, rzz_angle, base + 1 + c) for a, b in matching)
    meta = {
        "builder": "floquet",
        "steps": steps,
        "theta_h": theta_h,
        "rzz_angle": rzz_angle,
        "colors": len(colors),
        "layers_per_step": per_step,
    }
    if flagged:
        meta["theta_out_of_range"] = True
    return Circuit(graph, tuple(ops), meta)


def step_boundaries(circuit: Circuit) -> list[int]:
    """Op index where each Floquet step ends (cumulative, one per step)."""
    per_step = circuit.meta.get("layers_per_step")
    steps = circuit.meta.get("steps")
    if per_step is None or steps is None:
        raise ValidationError("circuit was not produced by build_floquet")
    ends = []
    for step in range(steps):
        last_layer = (step + 1) * per_step
        ends.append(sum(1 for op in circuit.ops if op.layer < last_layer))
    return ends


# ---------------------------------------------------------------------------
# OTOC Clifford ensemble
# ---------------------------------------------------------------------------


def _random_clifford_layer(
    rng: np.random.Generator, qubits: Sequence[int], layer: int
) -> list[GateOp]:
    group = gates.single_qubit_cliffords()
    picks = rng.integers(0, len(group), size=len(qubits))
    return [u1(q, group[k], layer) for q, k in zip(qubits, picks, strict=True)]


def build_otoc_clifford_ensemble(
    graph: DeviceGraph,
    n_entangling: int,
    butterfly: tuple[int, str],
    seed: int,
    *,
    entangler: str = "iswap",
    mirrored: bool = False,
) -> Circuit:
    """
    Random OTOC-style Clifford circuit.

    Entangling layers follow the edge colouring cyclically and stop after
    `n_entangling` gates in total. Every entangling layer is preceded by a
    layer of uniformly random single-qubit Cliffords. The butterfly Pauli
    goes in after the first ⌈n_entangling/2⌉ entangling gates.

    With `mirrored=True` the gates after the butterfly undo the most recent
    entangling gates of the first half (C†·B·C), which is the circuit a real
    OTOC measurement runs.
    """
    if n_entangling < 0:
        raise ValidationError("n_entangling must be non-negative")
    b_qubit, b_pauli = butterfly
    if b_qubit not in graph:
        raise ValidationError(f"butterfly qubit {b_qubit} is not on the device")
    if b_pauli not in ("X", "Y", "Z"):
        raise ValidationError(f"butterfly must be X, Y or Z, got {b_pauli!r}")
    try:
        kind = ENTANGLERS[entangler]
    except KeyError:
        raise ValidationError(
            f"unknown entangler {entangler!r}; use one of {sorted(ENTANGLERS)}"
        ) from None
    colors = edge_coloring(graph)
    if n_entangling and not colors:
        raise ValidationError("graph has no edges for entangling gates")

    rng = point_rng(seed)
    half = math.ceil(n_entangling / 2)
    forward_total = half if mirrored else n_entangling
    ops: list[GateOp] = []
    layer = 0
    placed = 0

    def add_butterfly() -> None:
        nonlocal layer
        layer += 1
        ops.append(pauli_op((b_qubit,), b_pauli, layer))
        layer += 1

    ops.extend(_random_clifford_layer(rng, graph.nodes, layer))
    layer += 1
    if half == 0 and not mirrored:
        add_butterfly()
    color = 0
    while placed < forward_total:
        for a, b in colors[color]:
            if placed == forward_total:
                break
            ops.append(GateOp(kind, (a, b), layer))
            placed += 1
            if placed == half and not mirrored:
                add_butterfly()
        layer += 1
        ops.extend(_random_clifford_layer(rng, graph.nodes, layer))
        layer += 1
        color = (color + 1) % len(colors)

    if mirrored:
        forward = list(ops)
        add_butterfly()
        undo = n_entangling - half
        for op in reversed(forward):
            if undo == 0:
                break
            layer += 1
            ops.append(op.inverse().at_layer(layer))
            if op.is_entangling:
                undo -= 1

    meta = {
        "builder": "otoc_clifford",
        "n_entangling": n_entangling,
        "butterfly": [b_qubit, b_pauli],
        "butterfly_index": half,
        "entangler": entangler,
        "mirrored": mirrored,
        "seed": seed,
    }
    return Circuit(graph, tuple(ops), meta)


# ---------------------------------------------------------------------------
# Fusion
# ---------------------------------------------------------------------------


def fuse_single_qubit_gates(circuit: Circuit) -> Circuit:
    """
    Fold every single-qubit gate into the next two-qubit gate touching its
    qubit; trailing single-qubit gates fold into the previous one. Qubits that
    never meet a two-qubit gate keep one fused single-qubit gate.
    """
    pending: dict[int, np.ndarray] = {}
    matrices: list[np.ndarray] = []
    for op in circuit.ops:
        u = op.unitary()
        if op.arity == 1:
            q = op.qubits[0]
            pending[q] = u @ pending.get(q, gates.I2)
            continue
        a, b = op.qubits
        pre = np.kron(pending.pop(a, gates.I2), pending.pop(b, gates.I2))
        matrices.append(u @ pre)
    two_qubit = [op for op in circuit.ops if op.arity == 2]
    last_on: dict[int, int] = {}
    for i, op in enumerate(two_qubit):
        for q in op.qubits:
            last_on[q] = i
    leftovers: dict[int, np.ndarray] = {}
    for q, m in pending.items():
        if q in last_on:
            i = last_on[q]
            a, b = two_qubit[i].qubits
            post = np.kron(m, gates.I2) if q == a else np.kron(gates.I2, m)
            matrices[i] = post @ matrices[i]
        else:
            leftovers[q] = m
    ops: list[GateOp] = [u1(q, m, 0) for q, m in sorted(leftovers.items())]
    ops.extend(
        u2(*op.qubits, m, i + 1)
        for i, (op, m) in enumerate(zip(two_qubit, matrices, strict=True))
    )
    return circuit.with_ops(ops, fused=True)


__all__ = [
    "ENTANGLERS",
    "RZZ_ANGLE",
    "build_floquet",
    "build_otoc_clifford_ensemble",
    "edge_coloring",
    "fuse_single_qubit_gates",
    "step_boundaries",
]
