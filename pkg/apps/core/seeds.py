"""
Deterministic seed derivation.

Every sweep point, trajectory batch or ensemble sample gets its own generator
spawned from the root seed by counter, so results do not depend on worker
count or scheduling order.
"""

import numpy as np


def point_sequence(root_seed: int, *key: int) -> np.random.SeedSequence:
    """SeedSequence for the point addressed by integer *key* under *root_seed*."""
    return np.random.SeedSequence(entropy=root_seed, spawn_key=tuple(key))


def point_rng(root_seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(point_sequence(root_seed, *key))


def derived_seed(root_seed: int, *key: int) -> int:
    """Integer seed for a sub-experiment (e.g. one ensemble member) under *key*."""
    return int(point_sequence(root_seed, *key).generate_state(1)[0])


def spawn_rngs(root_seed: int, count: int) -> list[np.random.Generator]:
    """*count* independent generators, the i-th keyed by counter i."""
    return [point_rng(root_seed, i) for i in range(count)]


__all__ = ["derived_seed", "point_rng", "point_sequence", "spawn_rngs"]
