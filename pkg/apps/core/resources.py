"""
Memory budget and numeric precision resolution.

Explicit arguments always win; settings are consulted only for omitted values.
A dense state of n qubits is admitted when twice its size fits the budget (the
buffer itself plus chunk temporaries and one spare buffer for parallel work).
"""

import logging

import numpy as np
from django.conf import settings

from apps.core.exceptions import ResourceError, ValidationError

logger = logging.getLogger(__name__)

PRECISIONS = {
    "complex128": np.complex128,
    "complex64": np.complex64,
}

# buffer + temporaries
STATE_HEADROOM = 2


def resolve_budget(budget: int | None = None) -> int:
    """Return *budget* or the configured EFFVOL_MEMORY_BUDGET."""
    value = settings.EFFVOL_MEMORY_BUDGET if budget is None else budget
    if value <= 0:
        raise ValidationError(f"memory budget must be positive, got {value}")
    return int(value)


def resolve_dtype(precision: str | np.dtype | None = None) -> np.dtype:
    """Map a precision name (or dtype) to a complex numpy dtype."""
    if precision is None:
        precision = settings.EFFVOL_PRECISION
    if isinstance(precision, str):
        try:
            return np.dtype(PRECISIONS[precision])
        except KeyError:
            raise ValidationError(
                f"unknown precision {precision!r}; use one of {sorted(PRECISIONS)}"
            ) from None
    dtype = np.dtype(precision)
    if dtype not in (np.dtype(np.complex64), np.dtype(np.complex128)):
        raise ValidationError(f"unsupported dtype {dtype}")
    return dtype


def state_bytes(n: int, dtype: np.dtype) -> int:
    return (1 << n) * np.dtype(dtype).itemsize


def max_state_qubits(dtype: np.dtype, budget: int | None = None) -> int:
    """Largest n whose dense state is admitted under *budget*."""
    budget = resolve_budget(budget)
    n = 0
    while STATE_HEADROOM * state_bytes(n + 1, dtype) <= budget:
        n += 1
    return n


def check_state_budget(n: int, dtype: np.dtype, budget: int | None = None) -> None:
    """Raise ResourceError when an n-qubit dense state does not fit."""
    budget = resolve_budget(budget)
    needed = STATE_HEADROOM * state_bytes(n, dtype)
    if needed > budget:
        raise ResourceError(
            f"{n}-qubit {np.dtype(dtype).name} state needs {needed} bytes "
            f"(with headroom) but the budget is {budget} bytes; "
            f"at most {max_state_qubits(dtype, budget)} qubits fit"
        )


def check_tensor_budget(rank: int, dtype: np.dtype, budget: int | None = None) -> None:
    """Raise ResourceError when a rank-*rank* tensor of qubit legs does not fit."""
    budget = resolve_budget(budget)
    needed = state_bytes(rank, dtype)
    if needed > budget:
        raise ResourceError(
            f"intermediate tensor of rank {rank} needs {needed} bytes; "
            f"budget is {budget} bytes"
        )


def chunk_size(size: int | None = None) -> int:
    value = settings.EFFVOL_CHUNK_SIZE if size is None else size
    if value < 1:
        raise ValidationError("chunk size must be at least 1")
    return int(value)


__all__ = [
    "PRECISIONS",
    "check_state_budget",
    "check_tensor_budget",
    "chunk_size",
    "max_state_qubits",
    "resolve_budget",
    "resolve_dtype",
    "state_bytes",
]
