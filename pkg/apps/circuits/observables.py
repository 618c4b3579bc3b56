"""
Named observables for the heavy-hex Floquet reproductions.

Stabilizer entries describe a Clifford derivation (start Pauli, steps); the
clifford app turns them into Pauli strings. Their start qubits were picked to
reach the target weights (17 and 10); no device run fixes them, hence
authoritative=False.
"""

import re
from dataclasses import dataclass

from apps.circuits.devices import HEAVY_HEX_CENTER
from apps.circuits.pauli import PauliString, parse_pauli
from apps.core.exceptions import ValidationError

# stabilizer:<qubit><P>@<steps>, e.g. stabilizer:58Z@5
_STABILIZER = re.compile(r"^stabilizer:(\d+)([XYZ])@(\d+)$")


@dataclass(frozen=True)
class ObservableSpec:
    name: str
    kind: str  # "pauli" | "stabilizer" | "magnetization"
    center: int
    pauli: PauliString | None = None
    start: tuple[int, str] | None = None
    steps: int = 0
    authoritative: bool = True
    note: str = ""


CATALOGUE: dict[str, ObservableSpec] = {
    "z62": ObservableSpec(
        name="z62",
        kind="pauli",
        center=HEAVY_HEX_CENTER,
        pauli=parse_pauli("Z62"),
    ),
    "stabilizer-62": ObservableSpec(
        name="stabilizer-62",
        kind="stabilizer",
        center=HEAVY_HEX_CENTER,
        start=(HEAVY_HEX_CENTER, "Z"),
        steps=5,
        note="weight 19 under the RX-then-RZZ step order",
    ),
    "stabilizer-17": ObservableSpec(
        name="stabilizer-17",
        kind="stabilizer",
        center=58,
        start=(58, "Z"),
        steps=5,
        authoritative=False,
        note="17-qubit stabilizer; start qubit chosen to reproduce the weight",
    ),
    "stabilizer-10": ObservableSpec(
        name="stabilizer-10",
        kind="stabilizer",
        center=13,
        start=(13, "Z"),
        steps=5,
        authoritative=False,
        note="10-qubit stabilizer at the lattice corner",
    ),
    "magnetization-28": ObservableSpec(
        name="magnetization-28",
        kind="magnetization",
        center=HEAVY_HEX_CENTER,
    ),
}


def resolve_observable(text: str) -> ObservableSpec:
    """
    Look up a catalogue name, a "stabilizer:<q><P>@<steps>" derivation spec
    or an inline Pauli string such as "Z62" / "-X3 Y4".
    """
    key = text.strip()
    if key in CATALOGUE:
        return CATALOGUE[key]
    match = _STABILIZER.match(key)
    if match:
        qubit, pauli, steps = int(match.group(1)), match.group(2), int(match.group(3))
        return ObservableSpec(
            name=key,
            kind="stabilizer",
            center=qubit,
            start=(qubit, pauli),
            steps=steps,
            authoritative=False,
        )
    try:
        pauli = parse_pauli(key)
    except ValidationError as exc:
        raise ValidationError(
            f"unknown observable {text!r}; use one of {sorted(CATALOGUE)}, "
            f"stabilizer:<qubit><P>@<steps> or an inline Pauli string ({exc})"
        ) from exc
    return ObservableSpec(name=key, kind="pauli", center=pauli.support[0], pauli=pauli)


__all__ = ["CATALOGUE", "ObservableSpec", "resolve_observable"]
