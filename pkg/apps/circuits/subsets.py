"""
Qubit-subset selection around a centre qubit.

open          BFS growth: nodes ordered by (distance from centre, label)
closed_loops  whole lattice cells first (minimum cycle basis, nearest cells
              first), then single nodes scored by (closes a cycle, distance,
              label)
"""

import enum
import logging

import networkx as nx

from apps.circuits.devices import DeviceGraph
from apps.core.exceptions import ValidationError

logger = logging.getLogger(__name__)


class BoundaryMode(enum.StrEnum):
    OPEN = "open"
    CLOSED_LOOPS = "closed_loops"


def _check(graph: DeviceGraph, center: int, target_n: int) -> dict[int, int]:
    if center not in graph:
        raise ValidationError(f"centre qubit {center} is not on the device")
    if target_n < 1:
        raise ValidationError(f"target_n must be at least 1, got {target_n}")
    dist = graph.distances_from(center)
    if target_n > len(dist):
        raise ValidationError(
            f"target_n={target_n} exceeds the {len(dist)} qubits reachable from "
            f"{center}"
        )
    return dist


def bfs_order(graph: DeviceGraph, center: int) -> list[int]:
    dist = graph.distances_from(center)
    return sorted(dist, key=lambda q: (dist[q], q))


def _open(graph: DeviceGraph, center: int, target_n: int) -> set[int]:
    return set(bfs_order(graph, center)[:target_n])


def _closed_loops(
    graph: DeviceGraph, center: int, target_n: int, dist: dict[int, int]
) -> set[int]:
    g = graph.nx_graph
    cells = [
        set(cycle)
        for cycle in nx.minimum_cycle_basis(g)
        if all(q in dist for q in cycle)
    ]
    cells.sort(
        key=lambda c: (min(dist[q] for q in c), sum(dist[q] for q in c), sorted(c))
    )

    chosen = {center}
    grown = True
    while grown:
        grown = False
        for cell in cells:
            if cell <= chosen or len(chosen | cell) > target_n:
                continue
            if _touches(g, chosen, cell):
                chosen |= cell
                grown = True
                break

    while len(chosen) < target_n:
        frontier = {v for q in chosen for v in g.neighbors(q)} - chosen
        chosen.add(min(frontier, key=lambda v: _fill_key(g, chosen, dist, v)))
    return chosen


def _fill_key(
    g: nx.Graph, chosen: set[int], dist: dict[int, int], v: int
) -> tuple[int, int, int]:
    closes_cycle = sum(1 for w in g.neighbors(v) if w in chosen) >= 2
    return (0 if closes_cycle else 1, dist[v], v)


def _touches(g: nx.Graph, chosen: set[int], cell: set[int]) -> bool:
    if chosen & cell:
        return True
    return any(w in chosen for q in cell for w in g.neighbors(q))


def select_subgraph(
    graph: DeviceGraph,
    center: int,
    target_n: int,
    boundary_mode: BoundaryMode | str = BoundaryMode.CLOSED_LOOPS,
) -> DeviceGraph:
    """Connected induced subgraph with exactly `target_n` qubits around `center`."""
    mode = BoundaryMode(boundary_mode)
    dist = _check(graph, center, target_n)
    if mode is BoundaryMode.OPEN:
        nodes = _open(graph, center, target_n)
    else:
        nodes = _closed_loops(graph, center, target_n, dist)
    sub = graph.subgraph(nodes)
    logger.debug(
        "Selected %d qubits around %d (%s), %d edges",
        len(sub),
        center,
        mode,
        len(sub.edges),
    )
    return sub


__all__ = ["BoundaryMode", "bfs_order", "select_subgraph"]
