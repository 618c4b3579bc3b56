"""
Observable time series over Floquet steps in a single simulation pass.
"""

import logging
from collections.abc import Sequence

from apps.circuits.builders import build_floquet, step_boundaries
from apps.circuits.devices import DeviceGraph
from apps.circuits.pauli import PauliString
from apps.statevector import simulator

logger = logging.getLogger(__name__)


def evolve_series(
    graph: DeviceGraph,
    steps: int,
    theta_h: float,
    obs: PauliString | Sequence[int],
    *,
    precision: str | None = None,
    budget: int | None = None,
    chunk: int | None = None,
) -> list[tuple[int, float]]:
    """
    (t, value) for t = 0..steps. *obs* is a Pauli string, or a qubit list whose
    average magnetization is tracked instead.
    """
    circuit = build_floquet(graph, steps, theta_h)
    state = simulator.init_basis(circuit.labels, precision=precision, budget=budget)

    def measure() -> float:
        if isinstance(obs, PauliString):
            return simulator.expectation(state, obs, chunk=chunk)
        return simulator.average_magnetization(state, list(obs), chunk=chunk)

    series = [(0, measure())]
    start = 0
    for t, stop in enumerate(step_boundaries(circuit), start=1):
        simulator.apply_ops(state, circuit.ops[start:stop], chunk=chunk)
        start = stop
        series.append((t, measure()))
        logger.debug("theta_h=%.4f step %d: %.6f", theta_h, t, series[-1][1])
    return series


__all__ = ["evolve_series"]
