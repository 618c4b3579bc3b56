"""
Dense state-vector simulation.

Bit order is little-endian by label rank: the i-th smallest label is bit i of
the amplitude index, so for labels (3, 7) the index of |q3=1, q7=0⟩ is 1.
Bitstrings are written in label order ("10" means first label set).

Kernels work in place on views of the amplitude buffer and never allocate
more than a few chunk-sized temporaries. Runs of consecutive diagonal
two-qubit gates are fused into one phase pass.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from apps.circuits.circuit import Circuit, GateKind, GateOp
from apps.circuits.gates import PAULI_MATRICES
from apps.circuits.pauli import PauliString
from apps.core import resources
from apps.core.exceptions import EffvolError, ValidationError

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-8


@dataclass
class StateVector:
    """Amplitudes over `labels`; owns its buffer exclusively."""

    labels: tuple[int, ...]
    amps: np.ndarray
    positions: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.labels = tuple(self.labels)
        if list(self.labels) != sorted(set(self.labels)):
            raise ValidationError("state labels must be sorted and unique")
        if self.amps.shape != (1 << len(self.labels),):
            raise ValidationError(
                f"{len(self.labels)} labels need {1 << len(self.labels)} amplitudes"
            )
        self.positions = {q: i for i, q in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def dtype(self) -> np.dtype:
        return self.amps.dtype

    def bit(self, label: int) -> int:
        try:
            return self.positions[label]
        except KeyError:
            raise ValidationError(
                f"qubit {label} is not part of this state {self.labels}"
            ) from None

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.labels, self.amps.copy())

    def index_of(self, bitstring: str) -> int:
        if len(bitstring) != self.n or set(bitstring) - {"0", "1"}:
            raise ValidationError(
                f"bitstring {bitstring!r} must have {self.n} binary digits"
            )
        return sum(1 << i for i, ch in enumerate(bitstring) if ch == "1")


def _labels(n_or_labels: int | Iterable[int]) -> tuple[int, ...]:
    if isinstance(n_or_labels, int):
        if n_or_labels < 0:
            raise ValidationError("qubit count must be non-negative")
        return tuple(range(n_or_labels))
    return tuple(sorted(n_or_labels))


def init_basis(
    n_or_labels: int | Iterable[int],
    bitstring: str | None = None,
    *,
    precision: str | None = None,
    budget: int | None = None,
) -> StateVector:
    """Computational basis state; default |0…0⟩ (every spin up, ⟨Z⟩ = +1)."""
    labels = _labels(n_or_labels)
    dtype = resources.resolve_dtype(precision)
    resources.check_state_budget(len(labels), dtype, budget)
    amps = np.zeros(1 << len(labels), dtype=dtype)
    state = StateVector(labels, amps)
    index = 0 if bitstring is None else state.index_of(bitstring)
    amps[index] = 1.0
    return state


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


def _free_slices(dims: Sequence[int], chunk: int) -> Iterator[tuple[slice, ...]]:
    """Cover an index box of shape *dims* with blocks of at most *chunk* cells."""
    total = math.prod(dims)
    if total <= chunk or not dims:
        yield (slice(None),) * len(dims)
        return
    first, rest = dims[0], math.prod(dims[1:])
    if rest <= chunk:
        step = chunk // rest
        for s in range(0, first, step):
            yield (slice(s, s + step),) + (slice(None),) * (len(dims) - 1)
        return
    for s in range(first):
        for tail in _free_slices(dims[1:], chunk):
            yield (slice(s, s + 1), *tail)


def apply_1q(amps: np.ndarray, bit: int, matrix: np.ndarray, chunk: int) -> None:
    v = amps.reshape(-1, 2, 1 << bit)
    m00, m01, m10, m11 = (complex(x) for x in np.ravel(matrix))
    for o, i in _free_slices((v.shape[0], v.shape[2]), chunk):
        a0 = v[o, 0, i]
        a1 = v[o, 1, i]
        t0 = m00 * a0
        if m01:
            t0 += m01 * a1
        if m11 != 1:
            a1 *= m11
        if m10:
            a1 += m10 * a0
        a0[...] = t0


def apply_2q(
    amps: np.ndarray, bit_a: int, bit_b: int, matrix: np.ndarray, chunk: int
) -> None:
    """Apply a 4×4 matrix whose most significant local factor is `bit_a`."""
    hi, lo = max(bit_a, bit_b), min(bit_a, bit_b)
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    m = np.asarray(matrix)
    # local index (a_bit << 1 | b_bit) of view position (h, l)
    a_is_hi = bit_a == hi
    local = {
        (h, l): ((h << 1) | l) if a_is_hi else ((l << 1) | h)
        for h in (0, 1)
        for l in (0, 1)  # noqa: E741
    }
    by_local = {k: hl for hl, k in local.items()}
    for o, mid, i in _free_slices((v.shape[0], v.shape[2], v.shape[4]), chunk):
        blocks = [v[o, h, mid, l, i] for h, l in (by_local[k] for k in range(4))]
        out = []
        for r in range(4):
            acc = None
            for c in range(4):
                coef = complex(m[r, c])
                if coef == 0:
                    continue
                term = coef * blocks[c]
                acc = term if acc is None else acc + term
            out.append(acc)
        for r in range(4):
            if out[r] is None:
                blocks[r][...] = 0
            else:
                blocks[r][...] = out[r]


def apply_diagonal_run(
    amps: np.ndarray, ops: Sequence[tuple[int, int, GateOp]], chunk: int
) -> None:
    """
    Multiply by the product of diagonal two-qubit gates in one pass.

    RZZ gates sharing an angle φ contribute exp(iφ·Σ z_a z_b); the integer
    sum is built per chunk from bit parities and turned into phases by table
    lookup. Other diagonal gates multiply their 4-entry diagonal in.
    """
    by_angle: dict[float, list[tuple[int, int]]] = {}
    others: list[tuple[int, int, np.ndarray]] = []
    for ba, bb, op in ops:
        if op.kind is GateKind.RZZ:
            by_angle.setdefault(op.params[0], []).append((ba, bb))
        else:
            others.append((ba, bb, np.diag(op.unitary())))
    bits_used = sorted({b for ba, bb, _ in ops for b in (ba, bb)})
    tables = {}
    for phi, pairs in by_angle.items():
        e = len(pairs)
        # Σ z_a z_b = e − 2·(number of differing pairs)
        tables[phi] = np.exp(1j * phi * (e - 2 * np.arange(e + 1))).astype(amps.dtype)
    size = amps.shape[0]
    for start in range(0, size, chunk):
        stop = min(size, start + chunk)
        idx = np.arange(start, stop, dtype=np.int64)
        bits = {b: ((idx >> b) & 1).astype(np.int8) for b in bits_used}
        blk = amps[start:stop]
        for phi, pairs in by_angle.items():
            differ = np.zeros(stop - start, dtype=np.int16)
            for ba, bb in pairs:
                differ += bits[ba] ^ bits[bb]
            blk *= tables[phi][differ]
        for ba, bb, diag in others:
            local = (bits[ba].astype(np.int64) << 1) | bits[bb]
            blk *= diag.astype(amps.dtype)[local]


# ---------------------------------------------------------------------------
# Circuit application
# ---------------------------------------------------------------------------


def _check_labels(state: StateVector, qubits: Iterable[int]) -> None:
    missing = set(qubits) - set(state.positions)
    if missing:
        raise ValidationError(
            f"circuit uses qubit(s) {sorted(missing)} unknown to the state"
        )


def apply_op(state: StateVector, op: GateOp, chunk: int) -> None:
    amps = state.amps
    if op.kind is GateKind.PAULI:
        for q, p in zip(op.qubits, op.pauli, strict=True):
            if p != "I":
                apply_1q(amps, state.bit(q), PAULI_MATRICES[p], chunk)
        return
    if op.arity == 1:
        apply_1q(amps, state.bit(op.qubits[0]), op.unitary(), chunk)
    else:
        a, b = op.qubits
        apply_2q(amps, state.bit(a), state.bit(b), op.unitary(), chunk)


def _is_fusable(op: GateOp) -> bool:
    return op.is_two_qubit and op.kind is not GateKind.PAULI and op.is_diagonal()


def apply_ops(
    state: StateVector, ops: Iterable[GateOp], *, chunk: int | None = None
) -> StateVector:
    """Apply *ops* in order, fusing consecutive diagonal two-qubit gates."""
    chunk = resources.chunk_size(chunk)
    run: list[tuple[int, int, GateOp]] = []
    for op in ops:
        if _is_fusable(op):
            a, b = op.qubits
            run.append((state.bit(a), state.bit(b), op))
            continue
        if run:
            apply_diagonal_run(state.amps, run, chunk)
            run = []
        apply_op(state, op, chunk)
    if run:
        apply_diagonal_run(state.amps, run, chunk)
    return state


def apply(
    state: StateVector, circuit: Circuit, *, chunk: int | None = None
) -> StateVector:
    """Multiply *state* in place by every gate of *circuit*."""
    _check_labels(state, circuit.touched)
    return apply_ops(state, circuit.ops, chunk=chunk)


def simulate(
    circuit: Circuit,
    *,
    bitstring: str | None = None,
    precision: str | None = None,
    budget: int | None = None,
    chunk: int | None = None,
) -> StateVector:
    state = init_basis(circuit.labels, bitstring, precision=precision, budget=budget)
    return apply(state, circuit, chunk=chunk)


# ---------------------------------------------------------------------------
# Measurements
# ---------------------------------------------------------------------------


def _masks(state: StateVector, obs: PauliString) -> tuple[int, int, int]:
    flip = zsign = n_y = 0
    for q, p in obs.paulis.items():
        b = 1 << state.bit(q)
        if p in ("X", "Y"):
            flip |= b
        if p in ("Y", "Z"):
            zsign |= b
        if p == "Y":
            n_y += 1
    return flip, zsign, n_y


def expectation(
    state: StateVector, obs: PauliString, *, chunk: int | None = None
) -> float:
    """⟨ψ|P|ψ⟩ computed chunk-wise without copying the state."""
    if obs.weight == 0:
        raise ValidationError("observable has empty support")
    chunk = resources.chunk_size(chunk)
    flip, zsign, n_y = _masks(state, obs)
    amps = state.amps
    coef = obs.phase * (1j**n_y)
    total = 0j
    for start in range(0, amps.shape[0], chunk):
        stop = min(amps.shape[0], start + chunk)
        idx = np.arange(start, stop, dtype=np.uint64)
        a = amps[start:stop]
        sign = 1 - 2 * (np.bitwise_count(idx & np.uint64(zsign)) & 1).astype(np.int8)
        if flip:
            partner = amps[(idx ^ np.uint64(flip)).astype(np.int64)]
            total += complex(np.sum(np.conj(partner) * a * sign))
        else:
            total += complex(np.sum((a.real**2 + a.imag**2) * sign))
    value = coef * total
    if abs(value.imag) > IMAG_TOL:
        raise EffvolError(
            f"expectation of {obs} has imaginary part {value.imag:.3e}"
        )
    return float(np.clip(value.real, -1.0, 1.0))


def amplitude(state: StateVector, bitstring: str) -> complex:
    return complex(state.amps[state.index_of(bitstring)])


def z_expectations(
    state: StateVector, qubits: Sequence[int], *, chunk: int | None = None
) -> dict[int, float]:
    """⟨Z_q⟩ for every q in *qubits* in one pass over the amplitudes."""
    chunk = resources.chunk_size(chunk)
    bits = {q: state.bit(q) for q in qubits}
    sums = dict.fromkeys(qubits, 0.0)
    amps = state.amps
    for start in range(0, amps.shape[0], chunk):
        stop = min(amps.shape[0], start + chunk)
        idx = np.arange(start, stop, dtype=np.int64)
        a = amps[start:stop]
        prob = a.real**2 + a.imag**2
        for q, b in bits.items():
            sums[q] += float(np.sum(prob * (1 - 2 * ((idx >> b) & 1))))
    return sums


def average_magnetization(
    state: StateVector, qubits: Sequence[int], *, chunk: int | None = None
) -> float:
    """Mean ⟨Z_q⟩ over *qubits*."""
    if not qubits:
        raise ValidationError("magnetization needs at least one qubit")
    values = z_expectations(state, qubits, chunk=chunk)
    return float(np.mean([values[q] for q in qubits]))


__all__ = [
    "StateVector",
    "amplitude",
    "apply",
    "apply_ops",
    "average_magnetization",
    "expectation",
    "init_basis",
    "simulate",
    "z_expectations",
]
