"""Entanglement generated by controlled scattering.

For the joint state built by :func:`qge.channel.joint_state` the reduced
state of Alice has determinant

    q = |r_A|^2 |t_A|^2 (1 - |r_B r_B'* + t_B t_B'*|^2)

and eigenvalues ``(1 +- sqrt(1 - 4 q)) / 2``.  Maximal entanglement is
``q = 1/4``, separability is ``q = 0``.  Everything here is built on that
closed form; the dense routes in :mod:`qge.channel` serve as checks.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .channel import ControlledPair
from .graph import StarPhaseParams
from .scattering import rt_simplified, star4_phase_form

RADICAND_TOL = 1e-12
GATE_TOL = 1e-10
_CHUNK = 1 << 16


class InconsistentInputError(ValueError):
    """Amplitudes that cannot come from unitary scattering."""


# -- eigenvalues and entropy ----------------------------------------------

def _lambdas_from_det(q):
    q = np.asarray(q, dtype=float)
    radicand = 1.0 - 4.0 * q
    if np.any(~np.isfinite(radicand)) or np.any(radicand < -RADICAND_TOL) or np.any(radicand > 1.0 + RADICAND_TOL):
        bad = radicand[~((radicand >= -RADICAND_TOL) & (radicand <= 1.0 + RADICAND_TOL))]
        raise InconsistentInputError(f"eigenvalue radicand {bad.ravel()[0]!r} outside [0, 1]")
    q = np.clip(q, 0.0, 0.25)
    lam_plus = 0.5 * (1.0 + np.sqrt(1.0 - 4.0 * q))
    # product form keeps the small eigenvalue accurate
    return lam_plus, q / lam_plus


def reduced_determinant(pair: ControlledPair) -> float:
    """``det(rho_A) = |r_A|^2 |t_A|^2 (1 - |<B'|B>|^2)``.

    Each factor is divided by the corresponding norm so that amplitudes
    which are unitary only to rounding still give ``0 <= q <= 1/4``.
    """
    A, B, Bp = pair.A, pair.B, pair.Bp
    nA = A.reflection + A.transmission
    nB = B.reflection + B.transmission
    nBp = Bp.reflection + Bp.transmission
    mix = A.reflection * A.transmission / nA**2
    overlap2 = abs(pair.overlap()) ** 2 / (nB * nBp)
    return mix * (1.0 - overlap2)


def lambda_pm(pair: ControlledPair) -> tuple[float, float]:
    lp, lm = _lambdas_from_det(reduced_determinant(pair))
    return float(lp), float(lm)


def entropy(lambdas) -> float | np.ndarray:
    """Von Neumann entropy in bits of the eigenvalues ``lambdas``.

    The last axis holds the eigenvalues; ``0 log 0`` is taken as 0.
    """
    lam = np.asarray(lambdas, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0.0, -lam * np.log2(np.where(lam > 0.0, lam, 1.0)), 0.0)
    h = terms.sum(axis=-1)
    return float(h) if np.ndim(h) == 0 else h


def max_ent_residual(pair: ControlledPair) -> float:
    return abs(reduced_determinant(pair) - 0.25)


def separability_residual(pair: ControlledPair) -> float:
    return reduced_determinant(pair)


@dataclass(frozen=True)
class EntanglementReport:
    lambda_plus: float
    lambda_minus: float
    entropy: float
    max_ent_residual: float
    separability_residual: float


def analyze(pair: ControlledPair) -> EntanglementReport:
    q = reduced_determinant(pair)
    lp, lm = _lambdas_from_det(q)
    return EntanglementReport(
        lambda_plus=float(lp),
        lambda_minus=float(lm),
        entropy=entropy([lp, lm]),
        max_ent_residual=abs(q - 0.25),
        separability_residual=q,
    )


# -- phase condition on Bob's star graph ----------------------------------

def solve_phi(kBl, n: int = 0):
    """Edge phase that makes Bob's two star-graph states orthogonal.

    Solves ``tan(kBl) tan(kBl + phi) = -4`` with the principal arctangent;
    ``n`` selects the branch, successive branches differ by ``pi``.
    """
    two_x = 2.0 * np.asarray(kBl, dtype=float)
    phi = -np.arctan(3.0 * np.sin(two_x) / (5.0 + 3.0 * np.cos(two_x))) + (2 * n + 1) * np.pi / 2
    return float(phi) if np.ndim(phi) == 0 else phi


def tan_product_residual(x, phi):
    """``|tan(x) tan(x + phi) + 4|``.

    Where ``|cos x cos(x + phi)| < 1e-6`` the tangent form is numerically
    meaningless and the cleared form ``|sin sin' + 4 cos cos'|`` is
    returned instead; both vanish on the same set.
    """
    x = np.asarray(x, dtype=float)
    y = x + phi
    s1, c1, s2, c2 = np.sin(x), np.cos(x), np.sin(y), np.cos(y)
    num = s1 * s2 + 4.0 * c1 * c2
    den = c1 * c2
    small = np.abs(den) < 1e-6
    with np.errstate(divide="ignore", invalid="ignore"):
        res = np.where(small, np.abs(num), np.abs(num / np.where(small, 1.0, den)))
    return float(res) if res.ndim == 0 else res


# -- single-qubit gates from the star graph --------------------------------

class Gate(enum.Enum):
    IDENTITY = "identity"
    GLOBAL_PHASE = "global-phase"
    PAULI_X = "pauli-x"
    PAULI_Z = "pauli-z"
    HADAMARD = "hadamard"


@dataclass(frozen=True)
class GateSpec:
    """Which gate to synthesize and the integer offsets of its parameters.

    ``delta`` is used by ``GLOBAL_PHASE``, ``alpha`` is the free lead phase
    of ``PAULI_X`` and ``sign`` picks the Hadamard branch
    ``x = +-arctan 2``.
    """

    gate: Gate
    n_phi: int = 0
    n_alpha: int = 0
    n_beta: int = 0
    delta: float = 0.0
    alpha: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if not isinstance(self.gate, Gate):
            object.__setattr__(self, "gate", Gate(self.gate))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def gate_matrix(spec: GateSpec) -> np.ndarray:
    g = spec.gate
    if g is Gate.IDENTITY:
        return np.eye(2, dtype=complex)
    if g is Gate.GLOBAL_PHASE:
        return np.exp(1j * spec.delta) * np.eye(2)
    if g is Gate.PAULI_X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if g is Gate.PAULI_Z:
        return np.diag([1.0, -1.0]).astype(complex)
    if g is Gate.HADAMARD:
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    raise ValueError(f"unknown gate {g!r}")


def gate_params(spec: GateSpec) -> StarPhaseParams:
    """Star-graph phases ``(x, alpha, beta)`` realizing ``spec.gate``.

    The Hadamard ``sign=-1`` branch needs ``alpha = (n_alpha + 3/8) pi``;
    keeping ``-3/8`` there does not give a Hadamard for any sign of the
    ``1/8`` term in ``beta``.
    """
    pi = np.pi
    nf, na, nb = spec.n_phi, spec.n_alpha, spec.n_beta
    g = spec.gate
    if g in (Gate.IDENTITY, Gate.GLOBAL_PHASE):
        shift = spec.delta / 2 if g is Gate.GLOBAL_PHASE else 0.0
        return StarPhaseParams((nf + 0.5) * pi, (na + 0.5) * pi + shift, (nb + 0.5) * pi + shift)
    if g is Gate.PAULI_X:
        return StarPhaseParams(nf * pi, spec.alpha + 2 * na * pi, 2 * nb * pi - spec.alpha)
    if g is Gate.PAULI_Z:
        return StarPhaseParams((nf + 0.5) * pi, (na + 0.5) * pi, nb * pi)
    if g is Gate.HADAMARD:
        s = spec.sign
        return StarPhaseParams(s * np.arctan(2.0) + nf * pi,
                               (na - s * 3 / 8) * pi,
                               (2 * nb - na + s / 8) * pi)
    raise ValueError(f"unknown gate {g!r}")


def global_phase_deviation(candidate, target) -> float:
    """Max elementwise distance after removing a global phase.

    Both matrices are divided by the phase of their entry at the position
    of ``target``'s first largest-magnitude entry.
    """
    candidate = np.asarray(candidate, dtype=complex)
    target = np.asarray(target, dtype=complex)
    idx = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    if abs(candidate[idx]) == 0:
        return float(np.inf)
    a = candidate * np.exp(-1j * np.angle(candidate[idx]))
    b = target * np.exp(-1j * np.angle(target[idx]))
    return float(np.abs(a - b).max())


@dataclass(frozen=True)
class GateReport:
    spec: GateSpec
    params: StarPhaseParams
    matrix: np.ndarray
    target: np.ndarray
    deviation: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tol


def verify_gate(spec: GateSpec, tol: float = GATE_TOL) -> GateReport:
    params = gate_params(spec)
    matrix = star4_phase_form(params).entries
    target = gate_matrix(spec)
    return GateReport(spec, params, matrix, target, global_phase_deviation(matrix, target), tol)


# -- entropy surfaces ------------------------------------------------------

class SweepMode(enum.Enum):
    CHANNEL_PHASE = "channel"
    EDGE_PHASE = "edge"


AXES = {
    SweepMode.CHANNEL_PHASE: ("tA2", "tB2", "phi"),
    SweepMode.EDGE_PHASE: ("kAl", "kBl", "phi"),
}


@dataclass(frozen=True)
class SurfaceTable:
    """Row-major table: one column per axis, then ``lambda_plus`` and ``entropy``."""

    columns: tuple[str, ...]
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def __len__(self):
        return self.data.shape[0]


def axis_values(spec) -> np.ndarray:
    """Grid points for one axis.

    ``spec`` is a scalar (fixed value), a ``(min, max, steps)`` triple or
    an explicit 1-d sequence.
    """
    if np.ndim(spec) == 0:
        return np.array([float(spec)])
    if isinstance(spec, tuple) and len(spec) == 3:
        lo, hi, steps = spec
        steps = int(steps)
        if steps < 1:
            raise ValueError("axis needs at least one step")
        if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
            raise ValueError(f"invalid axis bounds ({lo}, {hi})")
        return np.linspace(float(lo), float(hi), steps)
    values = np.asarray(spec, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("empty axis")
    if not np.all(np.isfinite(values)):
        raise ValueError("axis values must be finite")
    return values


def _channel_det(tA2, tB2, phi):
    if np.any((tA2 < 0) | (tA2 > 1) | (tB2 < 0) | (tB2 > 1)):
        raise ValueError("transmission probabilities must lie in [0, 1]")
    overlap = (1.0 - tB2) + np.exp(-1j * phi) * tB2
    return tA2 * (1.0 - tA2) * (1.0 - np.abs(overlap) ** 2)


def _edge_det(kAl, kBl, phi):
    rA, tA = rt_simplified(kAl)
    rB, tB = rt_simplified(kBl)
    rBp, tBp = rt_simplified(kBl + phi)
    overlap = rB * np.conj(rBp) + tB * np.conj(tBp)
    return np.abs(rA) ** 2 * np.abs(tA) ** 2 * (1.0 - np.abs(overlap) ** 2)


def _surface_chunk(mode: SweepMode, cols: np.ndarray) -> np.ndarray:
    det = _channel_det if mode is SweepMode.CHANNEL_PHASE else _edge_det
    q = det(cols[:, 0], cols[:, 1], cols[:, 2])
    lp, lm = _lambdas_from_det(q)
    return np.column_stack([lp, entropy(np.stack([lp, lm], axis=-1))])


def default_workers() -> int:
    env = os.environ.get("QGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def entropy_surface(mode: SweepMode | str, grid: Mapping[str, object],
                    workers: int | None = None) -> SurfaceTable:
    """Entanglement entropy over a parameter grid.

    ``mode`` ``"channel"`` sweeps ``(tA2, tB2, phi)``: transmission
    probabilities of Alice's and Bob's graphs and a phase on Bob's lead 1.
    ``"edge"`` sweeps ``(kAl, kBl, phi)`` for two symmetric star graphs with
    ``phi`` on Bob's dangling edge.  Each ``grid`` entry is given as in
    :func:`axis_values`; the first axis varies slowest.

    Chunks are evaluated on up to ``workers`` threads (default
    ``$QGE_THREADS`` or the CPU count).  The output does not depend on the
    number of workers.
    """
    mode = SweepMode(mode)
    names = AXES[mode]
    unknown = set(grid) - set(names)
    if unknown:
        raise ValueError(f"unknown axes {sorted(unknown)} for mode {mode.value!r}; expected {names}")
    missing = [n for n in names if n not in grid]
    if missing:
        raise ValueError(f"missing axes {missing}")
    axes = [axis_values(grid[n]) for n in names]
    mesh = np.meshgrid(*axes, indexing="ij")
    cols = np.column_stack([m.ravel() for m in mesh])
    if cols.shape[0] == 0:
        raise ValueError("empty grid")

    chunks = [cols[i:i + _CHUNK] for i in range(0, cols.shape[0], _CHUNK)]
    workers = min(workers or default_workers(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _surface_chunk(mode, c), chunks))
    else:
        parts = [_surface_chunk(mode, c) for c in chunks]
    data = np.column_stack([cols, np.concatenate(parts)])
    return SurfaceTable(names + ("lambda_plus", "entropy"), data)


def entropy_at(mode: SweepMode | str, a, b, phi) -> np.ndarray:
    """Entropy at matching arrays of the three axis values (no mesh)."""
    mode = SweepMode(mode)
    det = _channel_det if mode is SweepMode.CHANNEL_PHASE else _edge_det
    a, b, phi = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, phi)))
    lp, lm = _lambdas_from_det(det(a, b, phi))
    return entropy(np.stack([lp, lm], axis=-1))

