"""
Numerical contraction of a planned network.

Only meant for small networks: it is the cross-check against the state-vector
engine, and every intermediate is admitted against the memory budget before it
is allocated.
"""

import logging

import numpy as np

from apps.circuits.circuit import Circuit
from apps.circuits.pauli import PauliString
from apps.core import resources
from apps.core.exceptions import ValidationError
from apps.tncost.network import TensorNetwork, network_from_circuit, sandwich_network
from apps.tncost.planner import ContractionPlan, optimize_order

logger = logging.getLogger(__name__)

_DTYPE = np.dtype(np.complex128)


def execute_plan(
    network: TensorNetwork, plan: ContractionPlan, *, budget: int | None = None
) -> complex | np.ndarray:
    """
    Contract *network* along *plan*.

    Returns a complex scalar when nothing is open, otherwise the flat amplitude
    vector over `network.open_qubits` with the first open qubit as the most
    significant bit. An empty network contracts to 1.
    """
    if plan.legs != tuple(network.legs()):
        raise ValidationError("plan was built for a different network")
    if not network.tensors:
        return complex(1.0)
    budget = resources.resolve_budget(budget)
    arrays: list[np.ndarray | None] = [t.data for t in network.tensors]
    indices: list[tuple[int, ...]] = [t.indices for t in network.tensors]
    for i, j in plan.merges:
        a, b = indices[i], indices[j]
        shared = set(a) & set(b)
        out = tuple(x for x in a if x not in shared) + tuple(
            x for x in b if x not in shared
        )
        resources.check_tensor_budget(len(out), _DTYPE, budget)
        axes = ([a.index(x) for x in shared], [b.index(x) for x in shared])
        arrays.append(np.tensordot(arrays[i], arrays[j], axes=axes))
        indices.append(out)
        arrays[i] = arrays[j] = None

    result, order = arrays[plan.root], indices[plan.root]
    if set(order) != set(network.open_indices):
        raise ValidationError(
            f"contraction left indices {sorted(order)}, "
            f"expected the open set {sorted(network.open_indices)}"
        )
    if not order:
        return complex(result)
    perm = [order.index(x) for x in network.open_indices]
    return np.transpose(result, perm).reshape(-1)


def amplitude_by_contraction(
    circuit: Circuit,
    bitstring: str | None = None,
    *,
    budget: int | None = None,
    optimizer_budget: int | None = None,
    seed: int = 0,
) -> complex:
    """⟨bitstring|U|0…0⟩ from a closed network."""
    network = network_from_circuit(circuit, "closed", bitstring=bitstring)
    plan = optimize_order(network, budget=optimizer_budget, seed=seed)
    return complex(execute_plan(network, plan, budget=budget))


def expectation_by_contraction(
    circuit: Circuit,
    obs: PauliString,
    *,
    budget: int | None = None,
    optimizer_budget: int | None = None,
    seed: int = 0,
) -> float:
    """⟨0|U† O U|0⟩ from the mirrored network around the observable."""
    network = sandwich_network(circuit, obs)
    plan = optimize_order(network, budget=optimizer_budget, seed=seed)
    value = complex(execute_plan(network, plan, budget=budget))
    if abs(value.imag) > 1e-9:
        logger.warning("<%s> has imaginary part %.3g", obs, value.imag)
    return float(value.real)


__all__ = ["amplitude_by_contraction", "execute_plan", "expectation_by_contraction"]
