"""
Effective circuit volume: the entangling gates an observable depends on.

effective_volume counts the entangling gates inside the light cone, an upper
bound. refine_effective_volume tightens it by dropping cone gates whose
removal leaves the observable within δ of its exact value.
"""

import logging
from dataclasses import dataclass

from apps.circuits.circuit import Circuit
from apps.circuits.pauli import PauliString
from apps.core.exceptions import ValidationError
from apps.effvol.lightcone import LightCone, backward_lightcone, prune_to_lightcone
from apps.statevector import simulator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefinedVolume:
    count: int
    bound: int
    reference: float
    removed: tuple[int, ...]
    evaluations: int
    exhausted: bool = False


def effective_volume(cone: LightCone) -> int:
    return cone.volume


def refine_effective_volume(
    circuit: Circuit,
    obs: PauliString,
    delta: float,
    *,
    max_evaluations: int | None = None,
    commutation_aware: bool = False,
    precision: str | None = None,
    budget: int | None = None,
    chunk: int | None = None,
) -> RefinedVolume:
    """
    Greedy backward refinement of the cone volume.

    Entangling gates of the pruned circuit are tried from the last one to the
    first. A gate is dropped for good when the circuit without it, and without
    every gate dropped so far, still gives ⟨obs⟩ within *delta* of the exact
    value. Each trial is one dense simulation of the pruned circuit; with
    *max_evaluations* set the search stops early and `exhausted` is raised.
    """
    if delta <= 0:
        raise ValidationError(f"delta must be positive, got {delta}")
    if max_evaluations is not None and max_evaluations < 0:
        raise ValidationError("max_evaluations must be non-negative")

    cone = backward_lightcone(circuit, obs, commutation_aware=commutation_aware)
    pruned = prune_to_lightcone(circuit, cone)
    original = sorted(cone.gate_ids)

    def value(skip: set[int]) -> float:
        trial = pruned.with_ops(op for i, op in enumerate(pruned.ops) if i not in skip)
        state = simulator.simulate(
            trial, precision=precision, budget=budget, chunk=chunk
        )
        return simulator.expectation(state, obs, chunk=chunk)

    reference = value(set())
    candidates = [i for i, op in enumerate(pruned.ops) if op.is_entangling]
    dropped: set[int] = set()
    evaluations = 0
    exhausted = False
    for i in reversed(candidates):
        if max_evaluations is not None and evaluations >= max_evaluations:
            exhausted = True
            break
        evaluations += 1
        if abs(value(dropped | {i}) - reference) < delta:
            dropped.add(i)

    if exhausted:
        logger.warning(
            "Volume refinement stopped after %d of %d candidate gates",
            evaluations,
            len(candidates),
        )
    result = RefinedVolume(
        count=cone.volume - len(dropped),
        bound=cone.volume,
        reference=reference,
        removed=tuple(sorted(original[i] for i in dropped)),
        evaluations=evaluations,
        exhausted=exhausted,
    )
    logger.info(
        "Effective volume of %s: %d (cone bound %d, delta %.1e)",
        obs,
        result.count,
        result.bound,
        delta,
    )
    return result


__all__ = ["RefinedVolume", "effective_volume", "refine_effective_volume"]
