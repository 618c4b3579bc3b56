"""
State-vector cost accounting.

Each two-qubit gate updates 2^n amplitudes in groups of four with four complex
multiplications per amplitude; a single-qubit gate needs two.
"""

import math

from apps.circuits.circuit import Circuit
from apps.core.exceptions import ValidationError

MULTS_2Q = 4
MULTS_1Q = 2


def sv_cost_from_counts(n: int, two_qubit: int, one_qubit: int = 0) -> float:
    """log2 of 4·2^n·G2 + 2·2^n·G1; 0.0 when there is nothing to apply."""
    if n < 0 or two_qubit < 0 or one_qubit < 0:
        raise ValidationError("qubit and gate counts must be non-negative")
    mults = (MULTS_2Q * two_qubit + MULTS_1Q * one_qubit) << n
    if mults == 0:
        return 0.0
    return math.log2(mults)


def sv_cost(circuit: Circuit, *, include_one_qubit: bool = True) -> float:
    """Multiplication count (log2) of simulating *circuit* on its full qubit set."""
    g1 = circuit.one_qubit_count if include_one_qubit else 0
    return sv_cost_from_counts(len(circuit.labels), circuit.two_qubit_count, g1)


__all__ = ["MULTS_1Q", "MULTS_2Q", "sv_cost", "sv_cost_from_counts"]
