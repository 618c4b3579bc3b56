"""
Signed Pauli strings.

Text form: optional sign followed by space- or comma-separated factors
"<letter><label>", e.g. "Z62", "-X3 Y4 Z10", "+Y1,Z2".
"""

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from apps.core.exceptions import ValidationError

_FACTOR = re.compile(r"^([XYZ])(\d+)$")


@dataclass(frozen=True)
class PauliString:
    """Tensor product of X/Y/Z on a set of qubits with a ±1 phase."""

    paulis: Mapping[int, str]
    phase: int = 1
    _items: tuple[tuple[int, str], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.phase not in (1, -1):
            raise ValidationError(f"Pauli phase must be ±1, got {self.phase}")
        items = []
        for q, p in self.paulis.items():
            if p == "I":
                continue
            if p not in ("X", "Y", "Z"):
                raise ValidationError(f"unknown Pauli {p!r} on qubit {q}")
            items.append((int(q), p))
        items.sort()
        object.__setattr__(self, "_items", tuple(items))
        object.__setattr__(self, "paulis", dict(items))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self._items == other._items and self.phase == other.phase

    def __hash__(self) -> int:
        return hash((self._items, self.phase))

    def __str__(self) -> str:
        body = " ".join(f"{p}{q}" for q, p in self._items) or "I"
        return ("-" if self.phase < 0 else "") + body

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self._items)

    @property
    def weight(self) -> int:
        return len(self._items)

    def is_z_only(self) -> bool:
        return all(p == "Z" for _, p in self._items)

    def restricted(self, qubits: Iterable[int]) -> "PauliString":
        keep = set(qubits)
        return PauliString({q: p for q, p in self._items if q in keep}, self.phase)

    def negated(self) -> "PauliString":
        return PauliString(self.paulis, -self.phase)

    def matrix(self, labels: Iterable[int]) -> np.ndarray:
        """Dense matrix over *labels*; the first label is the most significant."""
        from apps.circuits.gates import pauli_matrix

        order = list(labels)
        missing = set(self.support) - set(order)
        if missing:
            raise ValidationError(f"qubits {sorted(missing)} are outside {order}")
        label = "".join(self.paulis.get(q, "I") for q in order)
        return self.phase * pauli_matrix(label)


def single(qubit: int, pauli: str = "Z") -> PauliString:
    return PauliString({qubit: pauli})


def parse_pauli(text: str) -> PauliString:
    """Parse "Z62" / "-X3 Y4" / "+Y1,Z2" into a PauliString."""
    body = text.strip()
    phase = 1
    if body and body[0] in "+-":
        phase = -1 if body[0] == "-" else 1
        body = body[1:].strip()
    paulis: dict[int, str] = {}
    for token in re.split(r"[\s,]+", body):
        if not token:
            continue
        match = _FACTOR.match(token.upper())
        if not match:
            raise ValidationError(f"bad Pauli factor {token!r} in {text!r}")
        letter, label = match.group(1), int(match.group(2))
        if label in paulis:
            raise ValidationError(f"qubit {label} appears twice in {text!r}")
        paulis[label] = letter
    if not paulis:
        raise ValidationError(f"observable {text!r} has empty support")
    return PauliString(paulis, phase)


__all__ = ["PauliString", "parse_pauli", "single"]
