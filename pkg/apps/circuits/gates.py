"""
Gate matrices under the project-wide conventions.

    RX(θ)  = exp(−i·(θ/2)·X)
    RZZ(φ) = exp(+i·φ·Z⊗Z)

Two-qubit matrices act on kron(first, second): qubits[0] of a GateOp is the
most significant factor of its 4×4 matrix.
"""

import functools
import itertools

import numpy as np

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)

PAULI_MATRICES = {"I": I2, "X": X, "Y": Y, "Z": Z}

UNITARY_TOL = 1e-12


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def rzz(phi: float) -> np.ndarray:
    p, m = np.exp(1j * phi), np.exp(-1j * phi)
    return np.diag([p, m, m, p]).astype(np.complex128)


def rzz_diagonal(phi: float) -> np.ndarray:
    """Diagonal of RZZ(φ) indexed by (bit_first << 1) | bit_second."""
    return np.diag(rzz(phi)).copy()


ISWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)
SQRT_ISWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 1 / np.sqrt(2), 1j / np.sqrt(2), 0],
        [0, 1j / np.sqrt(2), 1 / np.sqrt(2), 0],
        [0, 0, 0, 1],
    ],
    dtype=np.complex128,
)
CZ = np.diag([1, 1, 1, -1]).astype(np.complex128)


def pauli_matrix(label: str) -> np.ndarray:
    """Kronecker product of single-qubit Paulis, leftmost letter most significant."""
    out = np.ones((1, 1), dtype=np.complex128)
    for ch in label:
        out = np.kron(out, PAULI_MATRICES[ch])
    return out


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=tol, rtol=0))


def clifford_action(u: np.ndarray) -> tuple[int, ...]:
    """Signed images of X and Z under u·P·u†, as (±1, 0) weights on X, Y, Z.

    Two single-qubit Cliffords are equal modulo global phase exactly when
    their actions agree.
    """
    key = []
    for p in (X, Z):
        image = u @ p @ u.conj().T
        for q in (X, Y, Z):
            key.append(int(round(float(np.real(np.trace(q @ image))) / 2)))
    return tuple(key)


@functools.cache
def single_qubit_cliffords() -> tuple[np.ndarray, ...]:
    """The 24 single-qubit Clifford unitaries modulo global phase.

    Enumerated as words in H and S, keeping the first representative of every
    class in breadth-first order so the list is stable across runs.
    """
    found: list[np.ndarray] = []
    seen: set[tuple[int, ...]] = set()
    frontier = [I2]
    while frontier:
        nxt = []
        for u in frontier:
            key = clifford_action(u)
            if key in seen:
                continue
            seen.add(key)
            found.append(u)
            nxt.extend((H @ u, S @ u))
        frontier = nxt
    if len(found) != 24:
        raise AssertionError(f"expected 24 Clifford classes, found {len(found)}")
    return tuple(found)


def paulis_on(n: int) -> list[str]:
    """All 4**n Pauli labels over n qubits, identity first."""
    return ["".join(p) for p in itertools.product("IXYZ", repeat=n)]


__all__ = [
    "CZ",
    "H",
    "I2",
    "ISWAP",
    "PAULI_MATRICES",
    "S",
    "SQRT_ISWAP",
    "UNITARY_TOL",
    "X",
    "Y",
    "Z",
    "clifford_action",
    "is_unitary",
    "pauli_matrix",
    "paulis_on",
    "rx",
    "rzz",
    "rzz_diagonal",
    "single_qubit_cliffords",
]
