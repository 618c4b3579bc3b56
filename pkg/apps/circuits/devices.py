"""
Device lattices.

A DeviceGraph is an immutable labelled graph of qubits with nearest-neighbour
couplers. Built-in layouts:

    heavy_hex_127   the 127-qubit heavy-hex processor, row-major numbering,
                    qubit 62 at the centre (shipped as data/heavy_hex_127.json)
    chain(n)        0 — 1 — … — n−1
    grid(r, c)      row-major r×c square lattice

Custom layouts are accepted as {"nodes": [...], "edges": [[a, b], ...],
"coords": [[x, y], ...]?}.
"""

import functools
import json
import re
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import networkx as nx

from apps.core.exceptions import GraphSpecError, ValidationError

DATA_DIR = Path(__file__).resolve().parent / "data"

HEAVY_HEX_127 = "heavy_hex_127"
HEAVY_HEX_CENTER = 62

_PARAM_LAYOUT = re.compile(r"^(chain|grid)\((\d+)(?:\s*,\s*(\d+))?\)$")


@dataclass(frozen=True)
class DeviceGraph:
    """Qubit lattice: sorted integer labels, sorted (low, high) edge pairs."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    coords: Mapping[int, tuple[float, float]] | None = field(
        default=None, compare=False
    )
    name: str = field(default="custom", compare=False)

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for node in self.nodes:
            if node in seen:
                raise GraphSpecError(f"duplicate node {node}")
            seen.add(node)
        pairs: set[tuple[int, int]] = set()
        for a, b in self.edges:
            if a == b:
                raise GraphSpecError(f"self-loop on node {a}")
            for end in (a, b):
                if end not in seen:
                    raise GraphSpecError(
                        f"edge ({a}, {b}) references missing node {end}"
                    )
            key = (min(a, b), max(a, b))
            if key in pairs:
                raise GraphSpecError(f"duplicate edge ({a}, {b})")
            pairs.add(key)
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "edges", tuple(sorted(pairs)))

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, label: object) -> bool:
        return label in self._node_set

    @functools.cached_property
    def _node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)

    @functools.cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self._edge_set

    @functools.cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def neighbors(self, label: int) -> list[int]:
        return sorted(self.nx_graph.neighbors(label))

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(d for _, d in self.nx_graph.degree()).items()))

    def distances_from(self, label: int) -> dict[int, int]:
        """Graph geodesic distance from *label* to every reachable node."""
        if label not in self:
            raise ValidationError(f"qubit {label} is not on the device")
        return dict(nx.single_source_shortest_path_length(self.nx_graph, label))

    def is_connected(self) -> bool:
        return len(self.nodes) > 0 and nx.is_connected(self.nx_graph)

    def subgraph(self, labels: Iterable[int]) -> "DeviceGraph":
        """Induced subgraph on *labels* (labels are preserved)."""
        keep = set(labels)
        missing = keep - self._node_set
        if missing:
            raise ValidationError(f"qubits {sorted(missing)} are not on the device")
        coords = None
        if self.coords is not None:
            coords = {q: self.coords[q] for q in keep}
        return DeviceGraph(
            nodes=tuple(sorted(keep)),
            edges=tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
            coords=coords,
            name=f"{self.name}[{len(keep)}]",
        )

    # ------------------------------------------------------------------
    # Structured text
    # ------------------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "name": self.name,
            "nodes": list(self.nodes),
            "edges": [list(e) for e in self.edges],
        }
        if self.coords is not None:
            doc["coords"] = [list(self.coords[q]) for q in self.nodes]
        return doc


def graph_from_spec(spec: Mapping[str, Any], name: str | None = None) -> DeviceGraph:
    """Build a DeviceGraph from a {"nodes", "edges", "coords"?} mapping."""
    try:
        nodes = [int(q) for q in spec["nodes"]]
        edges = [(int(a), int(b)) for a, b in spec["edges"]]
    except KeyError as exc:
        raise GraphSpecError(f"device spec is missing {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise GraphSpecError(f"device spec is malformed: {exc}") from exc
    coords = None
    if spec.get("coords") is not None:
        raw = spec["coords"]
        if len(raw) != len(nodes):
            raise GraphSpecError(
                f"coords has {len(raw)} entries for {len(nodes)} nodes"
            )
        coords = {q: (float(x), float(y)) for q, (x, y) in zip(nodes, raw, strict=True)}
    return DeviceGraph(
        nodes=tuple(nodes),
        edges=tuple(edges),
        coords=coords,
        name=name or spec.get("name", "custom"),
    )


def chain(n: int) -> DeviceGraph:
    if n < 1:
        raise GraphSpecError("chain needs at least one qubit")
    return DeviceGraph(
        nodes=tuple(range(n)),
        edges=tuple((i, i + 1) for i in range(n - 1)),
        coords={i: (float(i), 0.0) for i in range(n)},
        name=f"chain({n})",
    )


def grid(rows: int, cols: int) -> DeviceGraph:
    if rows < 1 or cols < 1:
        raise GraphSpecError("grid needs positive dimensions")
    label = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((label(r, c), label(r, c + 1)))
            if r + 1 < rows:
                edges.append((label(r, c), label(r + 1, c)))
    return DeviceGraph(
        nodes=tuple(range(rows * cols)),
        edges=tuple(edges),
        coords={
            label(r, c): (float(c), float(-r))
            for r in range(rows)
            for c in range(cols)
        },
        name=f"grid({rows},{cols})",
    )


@functools.cache
def heavy_hex_127() -> DeviceGraph:
    with (DATA_DIR / "heavy_hex_127.json").open(encoding="utf-8") as fh:
        return graph_from_spec(json.load(fh), name=HEAVY_HEX_127)


def build_device(layout: str | Mapping[str, Any]) -> DeviceGraph:
    """
    Resolve a layout name ("heavy_hex_127", "chain(7)", "grid(3,3)") or an
    explicit {"nodes", "edges"} spec into a validated DeviceGraph.
    """
    if isinstance(layout, Mapping):
        return graph_from_spec(layout)
    if not isinstance(layout, str):
        raise GraphSpecError(f"unsupported layout {layout!r}")
    name = layout.strip().replace(" ", "")
    if name == HEAVY_HEX_127:
        return heavy_hex_127()
    match = _PARAM_LAYOUT.match(name)
    if not match:
        raise GraphSpecError(
            f"unknown layout {layout!r}; use heavy_hex_127, chain(n) or grid(r,c)"
        )
    kind, first, second = match.groups()
    if kind == "chain":
        if second is not None:
            raise GraphSpecError("chain takes one argument")
        return chain(int(first))
    if second is None:
        raise GraphSpecError("grid takes two arguments")
    return grid(int(first), int(second))


__all__ = [
    "HEAVY_HEX_127",
    "HEAVY_HEX_CENTER",
    "DeviceGraph",
    "build_device",
    "chain",
    "graph_from_spec",
    "grid",
    "heavy_hex_127",
]
