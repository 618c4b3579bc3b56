"""
JSON documents for devices and circuits.

    device  = {"name": str, "nodes": [int], "edges": [[int, int]], "coords"?: [[x, y]]}
    circuit = {"device_ref": "heavy_hex_127" | "chain(n)" | "grid(r,c)",
               or "device": <device>,
               "ops": [{"kind", "qubits", "layer", "params", "matrix"?, "pauli"?}],
               "meta": {...}}

Matrices are row-major lists of [re, im] pairs. Files are UTF-8.
"""

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from apps.circuits.circuit import Circuit, GateKind, GateOp
from apps.circuits.devices import DeviceGraph, build_device, graph_from_spec
from apps.core.exceptions import CircuitParseError, GraphSpecError, ValidationError


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(exc.msg, field=f"line {exc.lineno}") from exc


def _builtin_ref(graph: DeviceGraph) -> str | None:
    try:
        builtin = build_device(graph.name)
    except GraphSpecError:
        return None
    return graph.name if builtin == graph else None


# ---------------------------------------------------------------------------
# Devices
# ---------------------------------------------------------------------------


def device_to_json(graph: DeviceGraph) -> str:
    return json.dumps(graph.to_dict(), indent=2)


def device_from_dict(doc: Mapping[str, Any]) -> DeviceGraph:
    if not isinstance(doc, Mapping):
        raise CircuitParseError("device document must be an object", field="device")
    for key in ("nodes", "edges"):
        if key not in doc:
            raise CircuitParseError("missing", field=key)
    for i, edge in enumerate(doc["edges"]):
        if not isinstance(edge, list | tuple) or len(edge) != 2:
            raise CircuitParseError(f"edge {edge!r} is not a pair", field=f"edges[{i}]")
    try:
        return graph_from_spec(doc)
    except GraphSpecError as exc:
        raise CircuitParseError(str(exc), field="edges") from exc


def device_from_json(text: str) -> DeviceGraph:
    return device_from_dict(_load(text))


# ---------------------------------------------------------------------------
# Circuits
# ---------------------------------------------------------------------------


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    ref = _builtin_ref(circuit.graph)
    if ref is not None:
        doc["device_ref"] = ref
    else:
        doc["device"] = circuit.graph.to_dict()
    doc["ops"] = [op.to_dict() for op in circuit.ops]
    doc["meta"] = dict(circuit.meta)
    return doc


def circuit_to_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), indent=1)


def _op_from_dict(doc: Mapping[str, Any], where: str) -> GateOp:
    try:
        kind = GateKind(doc["kind"])
        matrix = None
        if "matrix" in doc:
            matrix = tuple(complex(re, im) for re, im in doc["matrix"])
        return GateOp(
            kind=kind,
            qubits=tuple(doc["qubits"]),
            layer=int(doc.get("layer", 0)),
            params=tuple(doc.get("params", ())),
            matrix=matrix,
            pauli=doc.get("pauli", ""),
        )
    except KeyError as exc:
        raise CircuitParseError(f"missing {exc.args[0]!r}", field=where) from exc
    except (TypeError, ValueError) as exc:
        raise CircuitParseError(str(exc), field=where) from exc


def circuit_from_dict(doc: Mapping[str, Any]) -> Circuit:
    if not isinstance(doc, Mapping):
        raise CircuitParseError("circuit document must be an object", field="circuit")
    if "device_ref" in doc:
        try:
            graph = build_device(doc["device_ref"])
        except GraphSpecError as exc:
            raise CircuitParseError(str(exc), field="device_ref") from exc
    elif "device" in doc:
        graph = device_from_dict(doc["device"])
    else:
        raise CircuitParseError("needs device_ref or device", field="circuit")
    ops = [_op_from_dict(op, f"ops[{i}]") for i, op in enumerate(doc.get("ops", []))]
    try:
        return Circuit(graph, tuple(ops), doc.get("meta", {}))
    except ValidationError as exc:
        raise CircuitParseError(str(exc), field="ops") from exc


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(_load(text))


def save(obj: Circuit | DeviceGraph, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = circuit_to_json(obj) if isinstance(obj, Circuit) else device_to_json(obj)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def load(path: Path) -> Circuit | DeviceGraph:
    """Read a device or circuit document, deciding by its keys."""
    doc = _load(Path(path).read_text(encoding="utf-8"))
    if isinstance(doc, Mapping) and "ops" in doc:
        return circuit_from_dict(doc)
    return device_from_dict(doc)


__all__ = [
    "circuit_from_dict",
    "circuit_from_json",
    "circuit_to_dict",
    "circuit_to_json",
    "device_from_dict",
    "device_from_json",
    "device_to_json",
    "load",
    "save",
]
