"""Energy-dependent scattering matrices of open quantum graphs.

Two routes are provided:

* :func:`global_smatrix` solves the directed-bond linear system for any
  open graph built from :mod:`qge.graph`.
* :func:`star4_smatrix`, :func:`star4_phase_form` and :func:`rt_simplified`
  are the closed forms for the four-vertex star graph.

The closed forms are written with ``sin x`` and ``cos x`` rather than
``tan x`` so that ``x = (n + 1/2) pi`` is an ordinary point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import BoundaryCondition, GraphError, MetricGraph, StarPhaseParams, errors, validate

DEFAULT_TOL = 1e-10
RESONANCE_COND = 1e12


class ResonanceError(ArithmeticError):
    """The internal bond system is singular at this wavenumber."""

    def __init__(self, k: float, cond: float):
        super().__init__(f"resonance at k={k!r} (condition number {cond:.3g})")
        self.k = k
        self.cond = cond


@dataclass(frozen=True)
class ChannelSMatrix:
    """Scattering of a particle entering through lead 0.

    ``r`` is the amplitude to come back out of lead 0 and ``t`` the
    amplitude to leave through lead 1.  ``k`` records the wavenumber at
    which they were evaluated (``nan`` when there is none).
    """

    r: complex
    t: complex
    k: float = float("nan")

    def __post_init__(self):
        object.__setattr__(self, "r", complex(self.r))
        object.__setattr__(self, "t", complex(self.t))
        if not (np.isfinite(self.r) and np.isfinite(self.t)):
            raise ValueError("scattering amplitudes must be finite")

    @property
    def reflection(self) -> float:
        return abs(self.r) ** 2

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2

    def unitarity_residual(self) -> float:
        return abs(abs(self.r) ** 2 + abs(self.t) ** 2 - 1.0)

    def phase_lock_residual(self) -> float:
        # zero whenever [[r, t], [t, r]] is unitary
        return abs((self.r * np.conj(self.t)).real)

    def check(self, tol: float = DEFAULT_TOL, symmetric: bool = False) -> None:
        if self.unitarity_residual() > tol:
            raise ValueError(f"|r|^2 + |t|^2 deviates from 1 by {self.unitarity_residual():.3g}")
        if symmetric and self.phase_lock_residual() > tol:
            raise ValueError(f"Re(r t*) = {self.phase_lock_residual():.3g} is not zero")

    def matrix(self) -> np.ndarray:
        return np.array([[self.r, self.t], [self.t, self.r]], dtype=complex)

    def with_global_phase(self, theta: float) -> "ChannelSMatrix":
        ph = np.exp(1j * theta)
        return ChannelSMatrix(self.r * ph, self.t * ph, self.k)

    @classmethod
    def from_probability(cls, transmission: float, k: float = float("nan")) -> "ChannelSMatrix":
        """Real reflection, imaginary transmission with the given ``|t|^2``."""
        if not 0.0 <= transmission <= 1.0:
            raise ValueError(f"transmission probability must lie in [0, 1], got {transmission!r}")
        return cls(np.sqrt(1.0 - transmission), 1j * np.sqrt(transmission), k)


@dataclass(frozen=True)
class FullSMatrix:
    entries: np.ndarray
    k: float = float("nan")

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"S-matrix must be square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n_channels(self) -> int:
        return self.entries.shape[0]

    def unitarity_residual(self) -> float:
        n = self.n_channels
        return float(np.abs(self.entries @ self.entries.conj().T - np.eye(n)).max())

    def channel(self) -> ChannelSMatrix:
        """Column 0 of a two-channel matrix as a :class:`ChannelSMatrix`."""
        if self.n_channels != 2:
            raise ValueError("channel view needs a two-channel S-matrix")
        return ChannelSMatrix(self.entries[0, 0], self.entries[1, 0], self.k)


def vertex_matrix(degree: int, bc: BoundaryCondition = BoundaryCondition.STANDARD) -> np.ndarray:
    """Vertex scattering matrix for a vertex with ``degree`` attached ends.

    Standard conditions give ``(2/d) J - I``; Dirichlet gives ``-I``.
    """
    if degree < 1:
        raise ValueError(f"vertex degree must be >= 1, got {degree}")
    if bc is BoundaryCondition.STANDARD:
        return np.full((degree, degree), 2.0 / degree) - np.eye(degree)
    if bc is BoundaryCondition.DIRICHLET:
        return -np.eye(degree)
    raise ValueError(f"unknown boundary condition {bc!r}")


def global_smatrix(graph: MetricGraph, k: float, n_channels: int | None = None) -> FullSMatrix:
    """Global S-matrix of ``graph`` at wavenumber ``k``.

    Every internal edge ``j`` carries two directed bonds: ``2j`` leaves
    ``edge.a`` and ``2j + 1`` leaves ``edge.b``.  The amplitude of a bond is
    taken at its start.  Travelling along the edge multiplies it by
    ``exp(i(k*length + phase))``.  At each vertex the arriving amplitudes,
    including unit injection on a lead, are redistributed by
    :func:`vertex_matrix`.  With ``M`` the internal bond-to-bond map, ``B``
    the lead injection, ``C`` the bond-to-lead map and ``R`` the direct
    lead-to-lead part::

        S = R + C (I - M)^{-1} B

    Raises :class:`ResonanceError` if ``I - M`` is numerically singular and
    :class:`~qge.graph.GraphError` for invalid graphs.
    """
    if not (np.isfinite(k) and k > 0):
        raise ValueError(f"k must be a positive real number, got {k!r}")
    problems = errors(validate(graph, n_channels))
    if problems:
        raise GraphError("invalid graph: " + "; ".join(map(str, problems)), problems)

    n_bonds = 2 * len(graph.edges)
    n_leads = len(graph.leads)
    lead_index = {lead.id: i for i, lead in enumerate(graph.leads)}
    travel = np.empty(n_bonds, dtype=complex)

    # ports[v] = list of (outgoing index, incoming index, is_lead)
    ports: dict[str, list[tuple[int, int, bool]]] = {v: [] for v in graph.vertices}
    for j, e in enumerate(graph.edges):
        travel[2 * j] = travel[2 * j + 1] = np.exp(1j * (k * e.length + e.phase))
        ports[e.a].append((2 * j, 2 * j + 1, False))
        ports[e.b].append((2 * j + 1, 2 * j, False))
    for lead in graph.leads:
        i = lead_index[lead.id]
        ports[lead.vertex].append((i, i, True))

    M = np.zeros((n_bonds, n_bonds), dtype=complex)
    B = np.zeros((n_bonds, n_leads), dtype=complex)
    C = np.zeros((n_leads, n_bonds), dtype=complex)
    R = np.zeros((n_leads, n_leads), dtype=complex)
    for v, vports in ports.items():
        if not vports:
            continue
        sigma = vertex_matrix(len(vports), graph.boundary(v))
        for p, (out_i, _, out_lead) in enumerate(vports):
            for q, (_, in_i, in_lead) in enumerate(vports):
                s = sigma[p, q]
                if s == 0:
                    continue
                if out_lead and in_lead:
                    R[out_i, in_i] += s
                elif out_lead:
                    C[out_i, in_i] += s * travel[in_i]
                elif in_lead:
                    B[out_i, in_i] += s
                else:
                    M[out_i, in_i] += s * travel[in_i]

    if n_bonds:
        A = np.eye(n_bonds) - M
        cond = np.linalg.cond(A)
        if not np.isfinite(cond) or cond > RESONANCE_COND:
            raise ResonanceError(float(k), float(cond))
        S = R + C @ np.linalg.solve(A, B)
    else:
        S = R
    return FullSMatrix(S, float(k))


def rt_simplified(x):
    """Amplitudes ``(R, T)`` of the symmetric star graph at ``x = k*l``.

    ``R = -tan x / (2i + tan x)`` and ``T = 2i / (2i + tan x)``, evaluated
    without the tangent.  Accepts scalars or arrays.
    """
    s, c = np.sin(x), np.cos(x)
    denom = 2j * c + s
    return -s / denom, 2j * c / denom


def star4_phase_form(params: StarPhaseParams | float, alpha: float | None = None,
                     beta: float | None = None) -> FullSMatrix:
    """Star-graph S-matrix in terms of phases.

    Takes a :class:`~qge.graph.StarPhaseParams` or the three numbers
    ``(x, alpha, beta)``.  The diagonal entries differ unless
    ``alpha == beta``, so the full matrix is returned.
    """
    if isinstance(params, StarPhaseParams):
        x, alpha, beta = params.x, params.alpha, params.beta
    else:
        x = params
        if alpha is None or beta is None:
            raise TypeError("star4_phase_form needs alpha and beta with a bare x")
    s, c = np.sin(x), np.cos(x)
    pre = -1.0 / (2j * c + s)
    off = -2j * c * np.exp(1j * (alpha + beta))
    S = pre * np.array([[s * np.exp(2j * alpha), off], [off, s * np.exp(2j * beta)]])
    return FullSMatrix(S)


def star4_smatrix(k: float, l12: float, l23: float, l24: float, phi: float = 0.0) -> FullSMatrix:
    """Closed-form S-matrix of :func:`~qge.graph.make_star4` graphs.

    ``phi`` is an extra phase on edge v2-v3.
    """
    for name, value in (("l12", l12), ("l23", l23), ("l24", l24)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    S = star4_phase_form(k * l23 + phi, k * l12, k * l24).entries
    return FullSMatrix(S, float(k))


def star4_analytic(k: float, l12: float, l23: float, l24: float, phi: float = 0.0) -> ChannelSMatrix:
    """``(r, t)`` of the star graph for a particle entering on lead 0."""
    return star4_smatrix(k, l12, l23, l24, phi).channel()
