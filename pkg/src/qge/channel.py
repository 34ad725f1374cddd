"""Scattering channels as qubits and the controlled scattering operator.

Lead 0 is the state |0> and lead 1 the state |1>.  A particle always
enters through lead 0, so a graph with amplitudes ``(r, t)`` prepares
``r|0> + t|1>``.  Two graphs are composed by letting Alice's output
channel choose which of Bob's configurations (B on |0>, B' on |1>)
scatters Bob's particle.

Two-qubit vectors use the basis order |00>, |01>, |10>, |11> with Alice's
qubit first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scattering import DEFAULT_TOL, ChannelSMatrix, rt_simplified

PSD_TOL = 1e-10


@dataclass(frozen=True)
class QubitState:
    a0: complex
    a1: complex

    def __post_init__(self):
        norm = abs(self.a0) ** 2 + abs(self.a1) ** 2
        if abs(norm - 1.0) > DEFAULT_TOL:
            raise ValueError(f"qubit state is not normalized (norm^2 = {norm!r})")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)


@dataclass(frozen=True)
class ControlledPair:
    """Alice's graph ``A`` and Bob's two configurations ``B`` and ``Bp``."""

    A: ChannelSMatrix
    B: ChannelSMatrix
    Bp: ChannelSMatrix

    def __post_init__(self):
        for name in ("A", "B", "Bp"):
            getattr(self, name).check(DEFAULT_TOL)

    def overlap(self) -> complex:
        """``r_B r_Bp* + t_B t_Bp*``, the inner product <B'|B>."""
        return self.B.r * np.conj(self.Bp.r) + self.B.t * np.conj(self.Bp.t)

    def controlled_operator(self) -> np.ndarray:
        """``|0><0| (x) S_B + |1><1| (x) S_B'`` as a 4x4 matrix."""
        p0 = np.diag([1.0, 0.0])
        p1 = np.diag([0.0, 1.0])
        return np.kron(p0, self.B.matrix()) + np.kron(p1, self.Bp.matrix())


@dataclass(frozen=True)
class JointState:
    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def __post_init__(self):
        norm = float(np.sum(np.abs(self.vector) ** 2))
        if abs(norm - 1.0) > DEFAULT_TOL:
            raise ValueError(f"joint state is not normalized (norm^2 = {norm!r})")

    @classmethod
    def from_vector(cls, v) -> "JointState":
        v = np.asarray(v, dtype=complex).ravel()
        if v.shape != (4,):
            raise ValueError("two-qubit state needs 4 amplitudes")
        return cls(*v)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c00, self.c01, self.c10, self.c11], dtype=complex)

    @property
    def amplitude_matrix(self) -> np.ndarray:
        """Coefficients ``c[i, j]`` of ``|i>_A |j>_B``."""
        return self.vector.reshape(2, 2)

    def schmidt_coefficients(self) -> np.ndarray:
        """Squared singular values of the amplitude matrix, descending."""
        return np.linalg.svd(self.amplitude_matrix, compute_uv=False) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        if np.abs(m - m.conj().T).max() > DEFAULT_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > DEFAULT_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m)!r}, not 1")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order, tiny negatives clamped to zero."""
        w = np.linalg.eigvalsh(self.entries)[::-1]
        return np.clip(w, 0.0, None)


def scatter_state(S: ChannelSMatrix) -> QubitState:
    return QubitState(S.r, S.t)


def joint_state(pair: ControlledPair) -> JointState:
    """Apply the controlled scattering operator after Alice's graph."""
    A, B, Bp = pair.A, pair.B, pair.Bp
    return JointState(A.r * B.r, A.r * B.t, A.t * Bp.r, A.t * Bp.t)


def joint_state_channel_phase(S_A: ChannelSMatrix, S_B: ChannelSMatrix, phi: float) -> JointState:
    """Joint state when the control only adds ``exp(i phi)`` to Bob's lead 1."""
    return JointState(S_A.r * S_B.r, S_A.r * S_B.t, S_A.t * S_B.r,
                      np.exp(1j * phi) * S_A.t * S_B.t)


def edge_phase_pair(kAl: float, kBl: float, phi: float) -> ControlledPair:
    """Two symmetric star graphs; the control adds ``phi`` on Bob's dangling edge."""
    return ControlledPair(
        ChannelSMatrix(*rt_simplified(kAl)),
        ChannelSMatrix(*rt_simplified(kBl)),
        ChannelSMatrix(*rt_simplified(kBl + phi)),
    )


def joint_state_edge_phase(kAl: float, kBl: float, phi: float) -> JointState:
    return joint_state(edge_phase_pair(kAl, kBl, phi))


def density_matrix(state: JointState) -> DensityMatrix:
    v = state.vector
    return DensityMatrix(np.outer(v, v.conj()))


def _entries(rho) -> np.ndarray:
    m = np.asarray(getattr(rho, "entries", rho), dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got {m.shape}")
    return m


def reduce_A(rho) -> DensityMatrix:
    """Alice's reduced state (trace over Bob)."""
    return DensityMatrix(np.einsum("ajbj->ab", _entries(rho).reshape(2, 2, 2, 2)))


def reduce_B(rho) -> DensityMatrix:
    """Bob's reduced state (trace over Alice)."""
    return DensityMatrix(np.einsum("iaib->ab", _entries(rho).reshape(2, 2, 2, 2)))


def expected_transmission_B(p: float, tB: complex, tBp: complex) -> float:
    """Probability of finding Bob's particle in lead 1 when ``p = |t_A|^2``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    return (1.0 - p) * abs(tB) ** 2 + p * abs(tBp) ** 2
