"""Open metric graphs with scattering leads.

A graph is a set of vertices, internal edges with physical lengths and an
optional additive phase, a list of leads (semi-infinite edges) and a
boundary condition per vertex.  Lead order defines the channel labels:
lead 0 is channel |0>, lead 1 is channel |1>.

Graphs are immutable; helpers such as :func:`with_edge_phase` return copies.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

FORMAT_VERSION = 1


class GraphError(ValueError):
    """Raised for malformed graphs or graph files."""

    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


class BoundaryCondition(enum.Enum):
    STANDARD = "standard"  # Neumann-Kirchhoff
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length: float
    phase: float = 0.0
    id: str = ""


@dataclass(frozen=True)
class Lead:
    id: int
    vertex: str


@dataclass(frozen=True)
class Violation:
    field: str
    rule: str
    severity: str = "error"  # "error" blocks scattering, "warning" does not

    def __str__(self):
        return f"[{self.severity}] {self.field}: {self.rule}"


@dataclass(frozen=True)
class MetricGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    leads: tuple[Lead, ...]
    bc: Mapping[str, BoundaryCondition] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        edges = []
        for i, e in enumerate(self.edges):
            if not e.id:
                e = dataclasses.replace(e, id=f"e{i}")
            edges.append(e)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "leads", tuple(self.leads))
        object.__setattr__(self, "bc", dict(self.bc))

    def boundary(self, vertex: str) -> BoundaryCondition:
        return self.bc.get(vertex, BoundaryCondition.STANDARD)

    def edge(self, edge_id: str | int) -> Edge:
        if isinstance(edge_id, int):
            if 0 <= edge_id < len(self.edges):
                return self.edges[edge_id]
        else:
            for e in self.edges:
                if e.id == edge_id:
                    return e
        raise KeyError(f"unknown edge {edge_id!r}")

    def degree(self, vertex: str) -> int:
        d = sum((e.a == vertex) + (e.b == vertex) for e in self.edges)
        return d + sum(lead.vertex == vertex for lead in self.leads)

    @property
    def n_channels(self) -> int:
        return len(self.leads)


@dataclass(frozen=True)
class StarPhaseParams:
    """Phase parameters of the star graph.

    ``x`` is ``k*l + phi`` on the dangling edge; ``alpha`` and ``beta`` are
    the phases picked up on the edges to lead 0 and lead 1.
    """

    x: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("x", "alpha", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def _connected(graph: MetricGraph, start: str, goal: str) -> bool:
    adjacency: dict[str, set[str]] = {v: set() for v in graph.vertices}
    for e in graph.edges:
        if e.a in adjacency and e.b in adjacency:
            adjacency[e.a].add(e.b)
            adjacency[e.b].add(e.a)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        if v == goal:
            return True
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def validate(graph: MetricGraph, n_channels: int | None = 2) -> list[Violation]:
    """Check graph invariants and return the list of violations.

    Pass ``n_channels=None`` to skip the lead-count rule for graphs with an
    arbitrary number of channels.  A two-channel graph whose lead vertices
    are not joined by internal edges is reported with severity
    ``"warning"``: it is legal, its transmission is just identically zero.
    """
    out: list[Violation] = []
    vertex_set = set(graph.vertices)
    if len(vertex_set) != len(graph.vertices):
        out.append(Violation("vertices", "vertex ids must be unique"))

    edge_ids = [e.id for e in graph.edges]
    if len(set(edge_ids)) != len(edge_ids):
        out.append(Violation("edges", "edge ids must be unique"))
    for e in graph.edges:
        where = f"edges[{e.id}]"
        for end in (e.a, e.b):
            if end not in vertex_set:
                out.append(Violation(where, f"endpoint {end!r} is not a vertex"))
        if not (math.isfinite(e.length) and e.length > 0):
            out.append(Violation(f"{where}.length", f"length must be finite and > 0, got {e.length!r}"))
        if not math.isfinite(e.phase):
            out.append(Violation(f"{where}.phase", "phase must be finite"))

    lead_ids = [lead.id for lead in graph.leads]
    if len(set(lead_ids)) != len(lead_ids):
        out.append(Violation("leads", "lead ids must be unique"))
    elif lead_ids != sorted(lead_ids):
        out.append(Violation("leads", "lead ids must be listed in increasing order"))
    for lead in graph.leads:
        if lead.vertex not in vertex_set:
            out.append(Violation(f"leads[{lead.id}].vertex", f"{lead.vertex!r} is not a vertex"))

    for v, cond in graph.bc.items():
        if v not in vertex_set:
            out.append(Violation(f"bc[{v}]", "boundary condition on unknown vertex"))
        if not isinstance(cond, BoundaryCondition):
            out.append(Violation(f"bc[{v}]", f"unknown boundary condition {cond!r}"))

    if n_channels is not None and len(graph.leads) != n_channels:
        out.append(Violation("leads", f"expected exactly {n_channels} leads, got {len(graph.leads)}"))
    if n_channels == 2 and len(graph.leads) == 2:
        v0, v1 = graph.leads[0].vertex, graph.leads[1].vertex
        if v0 == v1:
            out.append(Violation("leads", "the two leads must attach to different vertices"))
        elif v0 in vertex_set and v1 in vertex_set and not _connected(graph, v0, v1):
            out.append(Violation("edges", "lead vertices are not connected; transmission is zero",
                                 severity="warning"))
    return out


def errors(violations: Sequence[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]


def make_star4(l12: float, l23: float, l24: float) -> MetricGraph:
    """Star graph v2-{v1, v3, v4} with leads on v1 and v4, standard BC."""
    for name, value in (("l12", l12), ("l23", l23), ("l24", l24)):
        if not (math.isfinite(value) and value > 0):
            raise GraphError(f"{name} must be positive, got {value!r}")
    vertices = ("v1", "v2", "v3", "v4")
    return MetricGraph(
        vertices=vertices,
        edges=(
            Edge("v1", "v2", float(l12), id="e12"),
            Edge("v2", "v3", float(l23), id="e23"),
            Edge("v2", "v4", float(l24), id="e24"),
        ),
        leads=(Lead(0, "v1"), Lead(1, "v4")),
        bc={v: BoundaryCondition.STANDARD for v in vertices},
    )


def make_single_edge(length: float) -> MetricGraph:
    """One edge between two lead-bearing vertices (a bare wire)."""
    if not (math.isfinite(length) and length > 0):
        raise GraphError(f"length must be positive, got {length!r}")
    return MetricGraph(
        vertices=("v1", "v2"),
        edges=(Edge("v1", "v2", float(length), id="e12"),),
        leads=(Lead(0, "v1"), Lead(1, "v2")),
        bc={"v1": BoundaryCondition.STANDARD, "v2": BoundaryCondition.STANDARD},
    )


def with_edge_phase(graph: MetricGraph, edge: str | int, phi: float) -> MetricGraph:
    """Return a copy of ``graph`` whose edge ``edge`` carries phase ``phi``.

    The phase is added to k*length on that edge in both directions.  It
    replaces, not accumulates onto, any phase already on the edge.
    """
    target = graph.edge(edge)
    edges = tuple(dataclasses.replace(e, phase=float(phi)) if e is target else e
                  for e in graph.edges)
    return dataclasses.replace(graph, edges=edges)


# -- JSON graph files ------------------------------------------------------

def graph_to_dict(graph: MetricGraph) -> dict:
    return {
        "version": FORMAT_VERSION,
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "a": e.a, "b": e.b, "length": e.length, "phase": e.phase}
                  for e in graph.edges],
        "leads": [{"id": lead.id, "vertex": lead.vertex} for lead in graph.leads],
        "bc": {v: graph.boundary(v).value for v in graph.vertices},
    }


def graph_from_dict(data: Mapping) -> MetricGraph:
    if not isinstance(data, Mapping):
        raise GraphError("graph description must be a JSON object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise GraphError(f"unsupported graph file version {version!r} (expected {FORMAT_VERSION})")
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [
            Edge(str(e["a"]), str(e["b"]), float(e["length"]), float(e.get("phase", 0.0)),
                 str(e.get("id", "")))
            for e in data["edges"]
        ]
        leads = [Lead(int(lead["id"]), str(lead["vertex"])) for lead in data["leads"]]
        bc_raw = data.get("bc", {})
        if not isinstance(bc_raw, Mapping):
            raise GraphError("'bc' must be an object mapping vertex id to kind")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph description: {exc!r}") from exc

    bc = {}
    for v, kind in bc_raw.items():
        try:
            bc[str(v)] = BoundaryCondition(str(kind).lower())
        except ValueError:
            raise GraphError(f"unknown boundary condition {kind!r} on vertex {v!r}") from None
    return MetricGraph(tuple(vertices), tuple(edges), tuple(leads), bc)


def load_graph(path: str | Path) -> MetricGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def save_graph(graph: MetricGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(graph), fh, indent=2)
        fh.write("\n")
