"""
Operator spreading in random Clifford circuits and butterfly-velocity fits.

One time unit is one entangling layer: a layer of uniformly random
single-qubit Cliffords followed by the entangler on every edge of one colour
class, colour classes taken cyclically. The operator is evolved layer by
layer as U P U†; for these ensembles the distribution of supports is the
same as for Heisenberg evolution.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from scipy import stats

from apps.circuits.builders import ENTANGLERS, edge_coloring
from apps.circuits.circuit import Circuit, GateOp, u1
from apps.circuits.devices import DeviceGraph
from apps.circuits.gates import single_qubit_cliffords
from apps.circuits.pauli import PauliString, single
from apps.clifford.tableau import StabilizerTableau
from apps.core.exceptions import ValidationError
from apps.core.seeds import derived_seed, point_rng

logger = logging.getLogger(__name__)

# entangler families; "none" keeps only the single-qubit dressing
FAMILIES = (*ENTANGLERS, "none")


@dataclass(frozen=True)
class SpreadSample:
    """Support of the evolved operator in one ensemble member at step t."""

    t: int
    support_size: int
    radius: int
    sample: int = 0
    weights: dict[int, int] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ButterflyEstimate:
    velocity: float
    residual: float
    intercept: float
    window: tuple[int, int]
    profile: list[tuple[int, float]]


def default_origin(graph: DeviceGraph) -> int:
    return min(nx.center(graph.nx_graph))


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValidationError(
            f"unknown gate family {family!r}; use one of {list(FAMILIES)}"
        )


def _layer(
    graph: DeviceGraph,
    family: str,
    colors: list[list[tuple[int, int]]],
    step: int,
    rng: np.random.Generator,
) -> list[GateOp]:
    group = single_qubit_cliffords()
    picks = rng.integers(0, len(group), size=len(graph.nodes))
    ops = [u1(q, group[k], 2 * step) for q, k in zip(graph.nodes, picks, strict=True)]
    if family != "none" and colors:
        kind = ENTANGLERS[family]
        matching = colors[step % len(colors)]
        ops.extend(GateOp(kind, edge, 2 * step + 1) for edge in matching)
    return ops


def spread_circuit(
    graph: DeviceGraph, family: str, steps: int, seed: int
) -> Circuit:
    """The circuit whose layers spread_samples applies for this seed."""
    _check_family(family)
    colors = edge_coloring(graph)
    rng = point_rng(seed)
    ops: list[GateOp] = []
    for step in range(steps):
        ops.extend(_layer(graph, family, colors, step, rng))
    return Circuit(graph, tuple(ops), {"builder": "spread", "family": family})


def _sample_from(
    pauli: PauliString, t: int, k: int, dist: dict[int, int]
) -> SpreadSample:
    weights = Counter(dist[q] for q in pauli.support)
    return SpreadSample(
        t=t,
        support_size=pauli.weight,
        radius=max(weights, default=0),
        sample=k,
        weights=dict(sorted(weights.items())),
    )


def spread_samples(
    graph: DeviceGraph,
    family: str,
    steps: int,
    samples: int,
    seed: int,
    *,
    origin: int | None = None,
    pauli: str = "Z",
) -> list[SpreadSample]:
    """Support size, radius and radial weights w(t, r) per sample and step."""
    _check_family(family)
    if steps < 0 or samples < 1:
        raise ValidationError("steps must be ≥ 0 and samples ≥ 1")
    origin = default_origin(graph) if origin is None else origin
    if origin not in graph:
        raise ValidationError(f"origin {origin} is not on the device")
    dist = graph.distances_from(origin)
    colors = edge_coloring(graph)
    out: list[SpreadSample] = []
    for k in range(samples):
        rng = point_rng(derived_seed(seed, k))
        tab = StabilizerTableau.from_paulis(graph.nodes, [single(origin, pauli)])
        out.append(_sample_from(tab.row(0), 0, k, dist))
        for step in range(steps):
            for op in _layer(graph, family, colors, step, rng):
                tab.apply(op)
            out.append(_sample_from(tab.row(0), step + 1, k, dist))
    return out


def radius_profile(samples: list[SpreadSample]) -> list[tuple[int, float]]:
    """Mean radius R(t) over samples."""
    by_t: dict[int, list[int]] = {}
    for s in samples:
        by_t.setdefault(s.t, []).append(s.radius)
    return [(t, float(np.mean(r))) for t, r in sorted(by_t.items())]


def support_profile(samples: list[SpreadSample]) -> list[tuple[int, float]]:
    """Mean support size n_R(t) over samples."""
    by_t: dict[int, list[int]] = {}
    for s in samples:
        by_t.setdefault(s.t, []).append(s.support_size)
    return [(t, float(np.mean(n))) for t, n in sorted(by_t.items())]


def estimate_butterfly_velocity(
    graph: DeviceGraph,
    family: str,
    samples: int,
    seed: int,
    *,
    steps: int | None = None,
    origin: int | None = None,
) -> ButterflyEstimate:
    """
    Slope of the mean radius R(t) over the ballistic window: from the first
    step where R grows until the last step before any sample reaches the
    device boundary (the origin's eccentricity).
    """
    origin = default_origin(graph) if origin is None else origin
    if origin not in graph:
        raise ValidationError(f"origin {origin} is not on the device")
    eccentricity = max(graph.distances_from(origin).values())
    steps = eccentricity if steps is None else steps
    data = spread_samples(graph, family, steps, samples, seed, origin=origin)
    profile = radius_profile(data)
    max_radius = {t: max(s.radius for s in data if s.t == t) for t, _ in profile}

    r0 = profile[0][1]
    grown = [t for t, r in profile if r > r0]
    start = max(grown[0] - 1, 0) if grown else 0
    saturated = [t for t in max_radius if max_radius[t] >= eccentricity > 0]
    stop = saturated[0] - 1 if saturated else profile[-1][0]
    window = [(t, r) for t, r in profile if start <= t <= stop]
    if len(window) < 3:
        raise ValidationError(
            f"only {len(window)} points in the fit window [{start}, {stop}]; "
            "need at least 3 (more steps or a larger device)"
        )
    ts = np.array([t for t, _ in window], dtype=float)
    rs = np.array([r for _, r in window], dtype=float)
    fit = stats.linregress(ts, rs)
    residual = float(math.sqrt(np.mean((rs - (fit.intercept + fit.slope * ts)) ** 2)))
    logger.info(
        "Butterfly velocity (%s, %d samples): %.4f sites/layer, residual %.3e",
        family,
        samples,
        fit.slope,
        residual,
    )
    return ButterflyEstimate(
        velocity=float(fit.slope),
        residual=residual,
        intercept=float(fit.intercept),
        window=(int(ts[0]), int(ts[-1])),
        profile=profile,
    )


__all__ = [
    "FAMILIES",
    "ButterflyEstimate",
    "SpreadSample",
    "default_origin",
    "estimate_butterfly_velocity",
    "radius_profile",
    "spread_circuit",
    "spread_samples",
    "support_profile",
]
