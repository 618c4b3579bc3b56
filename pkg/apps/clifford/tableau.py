"""
GF(2) stabilizer tableau.

Each row is a Pauli operator i^e · X^x · Z^z with x, z bit vectors over the
tableau labels and e mod 4. A Hermitian Pauli string with k Y factors and
sign s stores e = k + (0 if s > 0 else 2).

Modes:
    state     n commuting, independent rows stabilizing a pure state
    operator  2n rows holding the images of X_1..X_n, Z_1..Z_n under a Clifford
    strings   any number of rows propagated independently

Gates act through conjugation tables computed once from their dense unitary:
every local X^a Z^b is mapped through U and matched against the 4^k local
Paulis. A gate whose images are not Paulis is rejected as non-Clifford.
"""

import enum
import functools
import logging
from collections.abc import Iterable, Sequence

import numpy as np
from django.conf import settings

from apps.circuits.circuit import Circuit, GateOp
from apps.circuits.gates import PAULI_MATRICES
from apps.circuits.pauli import PauliString
from apps.core.exceptions import EffvolError, NonCliffordGateError, ValidationError

logger = logging.getLogger(__name__)

CLIFFORD_TOL = 1e-10


class Mode(enum.StrEnum):
    STATE = "state"
    OPERATOR = "operator"
    STRINGS = "strings"


# ---------------------------------------------------------------------------
# Conjugation tables
# ---------------------------------------------------------------------------


def _local_pauli(code: int, k: int) -> np.ndarray:
    """X^x Z^z on k qubits; each qubit uses 2 bits (x, z), qubits[0] highest."""
    out = np.ones((1, 1), dtype=np.complex128)
    for j in range(k):
        c = (code >> (2 * (k - 1 - j))) & 3
        x, z = c >> 1, c & 1
        m = np.eye(2, dtype=np.complex128)
        if x:
            m = m @ PAULI_MATRICES["X"]
        if z:
            m = m @ PAULI_MATRICES["Z"]
        out = np.kron(out, m)
    return out


@functools.lru_cache(maxsize=256)
def _table(
    unitary_key: bytes, k: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
    u = np.frombuffer(unitary_key, dtype=np.complex128).reshape(1 << k, 1 << k)
    size = 4**k
    basis = [_local_pauli(code, k) for code in range(size)]
    img_x = np.zeros((size, k), dtype=np.uint8)
    img_z = np.zeros((size, k), dtype=np.uint8)
    img_e = np.zeros(size, dtype=np.int64)
    for code in range(size):
        image = u @ basis[code] @ u.conj().T
        for cand in range(size):
            c = np.trace(basis[cand].conj().T @ image) / (1 << k)
            if abs(abs(c) - 1.0) > CLIFFORD_TOL:
                continue
            e = int(np.rint(np.angle(c) / (np.pi / 2))) % 4
            if abs(c - 1j**e) > CLIFFORD_TOL:
                return None
            for j in range(k):
                bits = (cand >> (2 * (k - 1 - j))) & 3
                img_x[code, j], img_z[code, j] = bits >> 1, bits & 1
            img_e[code] = e
            break
        else:
            return None
    return img_x, img_z, img_e


def conjugation_table(
    op: GateOp, *, adjoint: bool = False, op_index: int | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Images of the 4^k local Paulis under P ↦ U P U† (or U† P U when
    *adjoint*), as (x bits, z bits, phase exponent) arrays indexed by the
    local code Σ (2x + z) · 4^(k−1−j).
    """
    u = op.unitary()
    if adjoint:
        u = u.conj().T
    table = _table(np.ascontiguousarray(u, dtype=np.complex128).tobytes(), op.arity)
    if table is None:
        raise NonCliffordGateError(
            f"{op.kind}{op.params or ''} on {op.qubits} is not a Clifford gate",
            op_index=op_index,
        )
    return table


def is_clifford(op: GateOp) -> bool:
    try:
        conjugation_table(op)
    except NonCliffordGateError:
        return False
    return True


# ---------------------------------------------------------------------------
# GF(2) linear algebra
# ---------------------------------------------------------------------------


def gf2_rank(matrix: np.ndarray) -> int:
    m = np.array(matrix, dtype=np.uint8) & 1
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivot = rank + np.flatnonzero(m[rank:, col])
        if pivot.size == 0:
            continue
        p = pivot[0]
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        below = np.flatnonzero(m[:, col])
        below = below[below != rank]
        m[below] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_solve(rows: np.ndarray, target: np.ndarray) -> np.ndarray | None:
    """Selection vector s with XOR of the selected rows equal to *target*."""
    r = np.array(rows, dtype=np.uint8) & 1
    n_rows, n_cols = r.shape
    combo = np.eye(n_rows, dtype=np.uint8)
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(n_cols):
        pivot = rank + np.flatnonzero(r[rank:, col])
        if pivot.size == 0:
            continue
        p = pivot[0]
        if p != rank:
            r[[rank, p]] = r[[p, rank]]
            combo[[rank, p]] = combo[[p, rank]]
        others = np.flatnonzero(r[:, col])
        others = others[others != rank]
        r[others] ^= r[rank]
        combo[others] ^= combo[rank]
        pivots.append((rank, col))
        rank += 1
        if rank == n_rows:
            break
    t = np.array(target, dtype=np.uint8) & 1
    selection = np.zeros(n_rows, dtype=np.uint8)
    for row, col in pivots:
        if t[col]:
            t ^= r[row]
            selection ^= combo[row]
    if t.any():
        return None
    return selection


# ---------------------------------------------------------------------------
# Tableau
# ---------------------------------------------------------------------------


class StabilizerTableau:
    """Rows of Pauli operators over `labels` evolving under Clifford gates."""

    def __init__(
        self,
        labels: Iterable[int],
        x: np.ndarray,
        z: np.ndarray,
        e: np.ndarray,
        mode: Mode | str = Mode.STRINGS,
    ) -> None:
        self.labels = tuple(labels)
        self.positions = {q: i for i, q in enumerate(self.labels)}
        if len(self.positions) != len(self.labels):
            raise ValidationError("tableau labels must be unique")
        self.x = np.asarray(x, dtype=np.uint8)
        self.z = np.asarray(z, dtype=np.uint8)
        self.e = np.asarray(e, dtype=np.int64) % 4
        self.mode = Mode(mode)
        n = len(self.labels)
        if self.x.shape != self.z.shape or self.x.shape[1:] != (n,):
            raise ValidationError("x and z blocks must both be (rows, n)")
        if self.e.shape != (self.x.shape[0],):
            raise ValidationError("one phase per row is required")

    # constructors ----------------------------------------------------------

    @classmethod
    def basis_state(
        cls, labels: Iterable[int], bitstring: str | None = None
    ) -> "StabilizerTableau":
        """Stabilizers (−1)^b_j Z_j of a computational basis state."""
        labels = tuple(labels)
        n = len(labels)
        bits = bitstring or "0" * n
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValidationError(f"bitstring {bits!r} must have {n} binary digits")
        x = np.zeros((n, n), dtype=np.uint8)
        z = np.eye(n, dtype=np.uint8)
        e = np.array([2 * int(b) for b in bits], dtype=np.int64)
        return cls(labels, x, z, e, Mode.STATE)

    @classmethod
    def identity_map(cls, labels: Iterable[int]) -> "StabilizerTableau":
        """Operator-mode tableau: rows X_1..X_n then Z_1..Z_n."""
        labels = tuple(labels)
        n = len(labels)
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        x = np.vstack([eye, zero])
        z = np.vstack([zero, eye])
        return cls(labels, x, z, np.zeros(2 * n, dtype=np.int64), Mode.OPERATOR)

    @classmethod
    def from_paulis(
        cls, labels: Iterable[int], paulis: Sequence[PauliString]
    ) -> "StabilizerTableau":
        labels = tuple(labels)
        rows = [_encode(labels, p) for p in paulis]
        n = len(labels)
        x = np.array([r[0] for r in rows], dtype=np.uint8).reshape(len(rows), n)
        z = np.array([r[1] for r in rows], dtype=np.uint8).reshape(len(rows), n)
        e = np.array([r[2] for r in rows], dtype=np.int64)
        return cls(labels, x, z, e, Mode.STRINGS)

    # basic accessors -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def n_rows(self) -> int:
        return self.x.shape[0]

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(
            self.labels, self.x.copy(), self.z.copy(), self.e.copy(), self.mode
        )

    def row(self, i: int) -> PauliString:
        return _decode(self.labels, self.x[i], self.z[i], int(self.e[i]))

    def rows(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n_rows)]

    def columns(self, qubits: Iterable[int]) -> list[int]:
        cols = []
        for q in qubits:
            if q not in self.positions:
                raise ValidationError(f"qubit {q} is not part of this tableau")
            cols.append(self.positions[q])
        return cols

    # evolution -------------------------------------------------------------

    def apply(
        self, op: GateOp, *, adjoint: bool = False, op_index: int | None = None
    ) -> None:
        """Conjugate every row by *op* (P ↦ U P U†, or U† P U when *adjoint*)."""
        img_x, img_z, img_e = conjugation_table(op, adjoint=adjoint, op_index=op_index)
        cols = self.columns(op.qubits)
        code = np.zeros(self.n_rows, dtype=np.int64)
        for c in cols:
            code = code * 4 + 2 * self.x[:, c] + self.z[:, c]
        self.x[:, cols] = img_x[code]
        self.z[:, cols] = img_z[code]
        self.e = (self.e + img_e[code]) % 4
        if settings.EFFVOL_CHECK_INVARIANTS:
            self.check_invariants()

    def apply_circuit(self, circuit: Circuit, *, heisenberg: bool = False) -> None:
        """
        Schrödinger order (U P U†, gates first to last) by default; with
        *heisenberg* the rows become U† P U (gates last to first, adjoint).
        """
        ops = list(enumerate(circuit.ops))
        if heisenberg:
            ops.reverse()
        for i, op in ops:
            self.apply(op, adjoint=heisenberg, op_index=i)

    # algebra ---------------------------------------------------------------

    def commutation_matrix(self) -> np.ndarray:
        """(i, j) entry is 1 when rows i and j anticommute."""
        x = self.x.astype(np.int64)
        z = self.z.astype(np.int64)
        return ((x @ z.T) + (z @ x.T)) % 2

    def check_invariants(self) -> None:
        if self.mode is Mode.STATE:
            if self.commutation_matrix().any():
                raise EffvolError("stabilizer generators no longer commute")
            if gf2_rank(np.hstack([self.x, self.z])) != self.n:
                raise EffvolError("stabilizer generators are not independent")
        elif self.mode is Mode.OPERATOR:
            n = self.n
            omega = np.block(
                [
                    [np.zeros((n, n), dtype=np.int64), np.eye(n, dtype=np.int64)],
                    [np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64)],
                ]
            )
            if not np.array_equal(self.commutation_matrix(), omega):
                raise EffvolError("Clifford map is no longer symplectic")

    def conjugate(self, pauli: PauliString) -> PauliString:
        """Image of *pauli* under the Clifford recorded by an operator tableau."""
        if self.mode is not Mode.OPERATOR:
            raise ValidationError("conjugate needs an operator-mode tableau")
        px, pz, pe = _encode(self.labels, pauli)
        n = self.n
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        e = pe
        # i^e X^x Z^z = i^e · Π X_j^{x_j} · Π Z_j^{z_j}, multiplied in that order
        for r in [j for j in range(n) if px[j]] + [n + j for j in range(n) if pz[j]]:
            x, z, e = _multiply(x, z, e, self.x[r], self.z[r], int(self.e[r]))
        return _decode(self.labels, x, z, e)


# ---------------------------------------------------------------------------
# Row encoding
# ---------------------------------------------------------------------------


def _encode(
    labels: tuple[int, ...], pauli: PauliString
) -> tuple[np.ndarray, np.ndarray, int]:
    pos = {q: i for i, q in enumerate(labels)}
    x = np.zeros(len(labels), dtype=np.uint8)
    z = np.zeros(len(labels), dtype=np.uint8)
    e = 0 if pauli.phase > 0 else 2
    for q, p in pauli.paulis.items():
        if q not in pos:
            raise ValidationError(f"qubit {q} of {pauli} is outside {labels}")
        i = pos[q]
        if p in ("X", "Y"):
            x[i] = 1
        if p in ("Y", "Z"):
            z[i] = 1
        if p == "Y":
            e += 1
    return x, z, e % 4


def _decode(
    labels: tuple[int, ...], x: np.ndarray, z: np.ndarray, e: int
) -> PauliString:
    letters = {}
    n_y = 0
    for i, q in enumerate(labels):
        if x[i] and z[i]:
            letters[q] = "Y"
            n_y += 1
        elif x[i]:
            letters[q] = "X"
        elif z[i]:
            letters[q] = "Z"
    sign = (e - n_y) % 4
    if sign not in (0, 2):
        raise EffvolError(f"row phase i^{sign} makes the Pauli non-Hermitian")
    return PauliString(letters, 1 if sign == 0 else -1)


def _multiply(
    x1: np.ndarray, z1: np.ndarray, e1: int, x2: np.ndarray, z2: np.ndarray, e2: int
) -> tuple[np.ndarray, np.ndarray, int]:
    """(i^e1 X^x1 Z^z1)(i^e2 X^x2 Z^z2) = i^e X^x Z^z."""
    swap = int(np.dot(z1.astype(np.int64), x2.astype(np.int64)))
    return x1 ^ x2, z1 ^ z2, (e1 + e2 + 2 * swap) % 4


# ---------------------------------------------------------------------------
# State-mode queries
# ---------------------------------------------------------------------------


def clifford_state(
    circuit: Circuit, bitstring: str | None = None
) -> StabilizerTableau:
    """State tableau of circuit·|bitstring⟩ over the circuit's device labels."""
    tab = StabilizerTableau.basis_state(circuit.labels, bitstring)
    tab.apply_circuit(circuit)
    return tab


def stabilizer_expectation(tab: StabilizerTableau, obs: PauliString) -> int:
    """⟨obs⟩ on the stabilizer state: ±1 inside ±group, otherwise 0."""
    if tab.mode is not Mode.STATE:
        raise ValidationError("stabilizer_expectation needs a state-mode tableau")
    ox, oz, oe = _encode(tab.labels, obs)
    anti = (_dot(tab.x, oz) + _dot(tab.z, ox)) % 2
    if anti.any():
        return 0
    selection = gf2_solve(np.hstack([tab.x, tab.z]), np.concatenate([ox, oz]))
    if selection is None:
        # commutes with every generator of a pure state, so this cannot happen
        raise EffvolError(f"{obs} commutes with the group but is not a member")
    n = tab.n
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    e = 0
    for r in np.flatnonzero(selection):
        x, z, e = _multiply(x, z, e, tab.x[r], tab.z[r], int(tab.e[r]))
    diff = (oe - e) % 4
    if diff not in (0, 2):
        raise EffvolError("inconsistent stabilizer phase")
    return 1 if diff == 0 else -1


def _dot(block: np.ndarray, vector: np.ndarray) -> np.ndarray:
    return block.astype(np.int64) @ vector.astype(np.int64)


__all__ = [
    "CLIFFORD_TOL",
    "Mode",
    "StabilizerTableau",
    "clifford_state",
    "conjugation_table",
    "gf2_rank",
    "gf2_solve",
    "is_clifford",
    "stabilizer_expectation",
]
