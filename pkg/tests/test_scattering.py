import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qge.graph import (
    BoundaryCondition, Edge, GraphError, Lead, MetricGraph, make_single_edge, make_star4,
    with_edge_phase,
)
from qge.scattering import (
    ChannelSMatrix, FullSMatrix, ResonanceError, global_smatrix, rt_simplified, star4_analytic,
    star4_phase_form, star4_smatrix, vertex_matrix,
)

angles = st.floats(min_value=-20, max_value=20, allow_nan=False)


def tan_form_star4(k, l12, l23, l24, phi=0.0):
    """Star-graph S-matrix written with tan, straight from the closed form."""
    tn = np.tan(k * l23 + phi)
    off = -2j * np.exp(1j * k * (l12 + l24))
    return -1 / (2j + tn) * np.array([[tn * np.exp(2j * k * l12), off],
                                      [off, tn * np.exp(2j * k * l24)]])


# -- vertex matrices

def test_vertex_matrix_examples():
    np.testing.assert_array_equal(vertex_matrix(2), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(vertex_matrix(1), [[1]])
    np.testing.assert_allclose(vertex_matrix(3), np.array([[-1, 2, 2], [2, -1, 2], [2, 2, -1]]) / 3,
                               atol=1e-15)
    np.testing.assert_array_equal(vertex_matrix(3, BoundaryCondition.DIRICHLET), -np.eye(3))


@pytest.mark.parametrize("d", range(1, 9))
def test_vertex_matrix_unitary_symmetric(d):
    s = vertex_matrix(d)
    np.testing.assert_allclose(s @ s.T, np.eye(d), atol=1e-14)
    np.testing.assert_array_equal(s, s.T)


def test_vertex_matrix_degree_zero():
    with pytest.raises(ValueError):
        vertex_matrix(0)


# -- generic solver

@pytest.mark.parametrize("k", [0.1, 1.0, 2.7, 13.0])
def test_single_edge_is_free_propagation(k):
    S = global_smatrix(make_single_edge(1.7), k)
    assert abs(S.entries[0, 0]) < 1e-15
    assert abs(S.entries[1, 0] - np.exp(1j * k * 1.7)) < 1e-14


def test_disconnected_lead_reflects_totally():
    g = MetricGraph(("a", "b", "c"), (Edge("a", "c", 1.3),), (Lead(0, "a"), Lead(1, "b")))
    ch = global_smatrix(g, 0.9).channel()
    assert abs(abs(ch.r) - 1) < 1e-14
    assert ch.t == 0


def test_dirichlet_vertex_blocks():
    g = make_single_edge(1.0)
    g = MetricGraph(g.vertices, g.edges, g.leads, {"v1": BoundaryCondition.DIRICHLET})
    S = global_smatrix(g, 1.0).entries
    np.testing.assert_allclose(S[0], [-1, 0], atol=1e-15)


def test_star4_matches_closed_form(rng):
    for _ in range(50):
        a, b, c = rng.uniform(0.1, 3, 3)
        k = rng.uniform(0.05, 10)
        S = global_smatrix(make_star4(a, b, c), k).entries
        np.testing.assert_allclose(S, star4_smatrix(k, a, b, c).entries, atol=1e-10, rtol=0)
        np.testing.assert_allclose(S, tan_form_star4(k, a, b, c), atol=1e-10, rtol=0)


def test_edge_phase_matches_closed_form(rng):
    for _ in range(20):
        a, b, c = rng.uniform(0.1, 3, 3)
        k, phi = rng.uniform(0.05, 10), rng.uniform(-np.pi, np.pi)
        g = with_edge_phase(make_star4(a, b, c), "e23", phi)
        np.testing.assert_allclose(global_smatrix(g, k).entries,
                                   star4_smatrix(k, a, b, c, phi).entries, atol=1e-10, rtol=0)


def test_resonance_is_reported():
    # a closed Dirichlet edge has bound states at k*L = n*pi
    g = make_single_edge(1.0)
    g = MetricGraph(g.vertices + ("c", "d"), g.edges + (Edge("c", "d", 2.0, id="closed"),),
                    g.leads, {"c": BoundaryCondition.DIRICHLET, "d": BoundaryCondition.DIRICHLET})
    global_smatrix(g, 1.0)
    with pytest.raises(ResonanceError) as info:
        global_smatrix(g, np.pi / 2)
    assert info.value.k == np.pi / 2


def test_invalid_graph_rejected():
    g = MetricGraph(("a",), (Edge("a", "a", -1.0),), (Lead(0, "a"),))
    with pytest.raises(GraphError):
        global_smatrix(g, 1.0)
    with pytest.raises(ValueError):
        global_smatrix(make_star4(1, 1, 1), -1.0)


def random_graph(rng, n_vertices, n_edges, n_leads):
    vertices = tuple(f"v{i}" for i in range(n_vertices))
    edges = [Edge(vertices[i], vertices[i + 1], rng.uniform(0.2, 3)) for i in range(n_vertices - 1)]
    for _ in range(n_edges - len(edges)):
        a, b = rng.choice(n_vertices, 2, replace=True)
        edges.append(Edge(vertices[a], vertices[b], rng.uniform(0.2, 3), rng.uniform(-1, 1)))
    at = rng.choice(n_vertices, n_leads, replace=True)
    leads = tuple(Lead(i, vertices[v]) for i, v in enumerate(at))
    bc = {v: BoundaryCondition.DIRICHLET for v in vertices if rng.random() < 0.1}
    return MetricGraph(vertices, tuple(edges), leads, bc)


def test_random_graphs_unitary(rng):
    checked = 0
    for _ in range(200):
        g = random_graph(rng, rng.integers(2, 7), rng.integers(6, 12), rng.integers(1, 5))
        try:
            S = global_smatrix(g, rng.uniform(0.1, 10))
        except ResonanceError:
            continue
        assert S.unitarity_residual() <= 1e-10
        checked += 1
    assert checked > 150


# -- closed forms

def test_star4_analytic_transparent_point():
    k, l23 = 1.3, 0.8
    ch = star4_analytic(k, 1.0, l23, 2.0, phi=-k * l23)
    assert abs(ch.r) < 1e-15
    assert abs(abs(ch.t) - 1) < 1e-15


def test_star4_analytic_at_tan_pole():
    k, l12, l23 = 1.1, 0.4, 1.0
    ch = star4_analytic(k, l12, l23, 2.0, phi=np.pi / 2 - k * l23)
    assert abs(ch.t) < 1e-15
    assert abs(ch.r + np.exp(2j * k * l12)) < 1e-15


def test_star4_analytic_balanced_splitting():
    ch = star4_analytic(np.arctan(2), 1.0, 1.0, 1.0)
    assert ch.reflection == pytest.approx(0.5, abs=1e-15)
    assert ch.transmission == pytest.approx(0.5, abs=1e-15)


def test_star4_rejects_bad_length():
    with pytest.raises(ValueError):
        star4_analytic(1.0, 0.0, 1.0, 1.0)


@pytest.mark.parametrize("x, alpha, beta, expected", [
    (np.pi / 2, np.pi / 2, np.pi / 2, np.eye(2)),
    (np.pi / 2, np.pi / 2, 0.0, np.diag([1, -1])),
    (0.0, 0.4, -0.4, np.array([[0, 1], [1, 0]])),
])
def test_phase_form_table_points(x, alpha, beta, expected):
    np.testing.assert_allclose(star4_phase_form(x, alpha, beta).entries, expected, atol=1e-15)


@given(angles, angles, angles)
def test_phase_form_pi_periodic_in_x(x, a, b):
    np.testing.assert_allclose(star4_phase_form(x + np.pi, a, b).entries,
                               star4_phase_form(x, a, b).entries, atol=1e-12)


@given(angles, angles, angles)
def test_phase_form_unitary(x, a, b):
    assert star4_phase_form(x, a, b).unitarity_residual() < 1e-12


@given(st.floats(0.01, 10), st.floats(0.01, 5), st.floats(0.01, 5), st.floats(0.01, 5),
       st.floats(0, 5))
def test_lead_length_only_changes_phases(k, a, b, c, d):
    ch = star4_analytic(k, a, b, c)
    shifted = star4_analytic(k, a + d, b, c + d)
    assert abs(abs(shifted.r) - abs(ch.r)) < 1e-12
    assert abs(abs(shifted.t) - abs(ch.t)) < 1e-12


def test_rt_simplified_examples():
    assert rt_simplified(0.0) == (0, 1)
    R, T = rt_simplified(np.pi / 2)
    assert abs(R + 1) < 1e-15 and abs(T) < 1e-15
    R, T = rt_simplified(np.arctan(2))
    assert abs(R) ** 2 == pytest.approx(0.5, abs=1e-15)
    assert abs(T) ** 2 == pytest.approx(0.5, abs=1e-15)


@given(st.floats(-50, 50))
def test_rt_simplified_symmetric_unitary(x):
    R, T = rt_simplified(x)
    assert abs((R * np.conj(T)).real) <= 1e-12
    assert abs(abs(R) ** 2 + abs(T) ** 2 - 1) <= 1e-12


def test_rt_simplified_is_phase_form_at_pi_pi():
    x = np.linspace(-3, 3, 61)
    R, T = rt_simplified(x)
    for xi, Ri, Ti in zip(x, R, T):
        S = star4_phase_form(xi, np.pi, np.pi).entries
        np.testing.assert_allclose(S, [[Ri, Ti], [Ti, Ri]], atol=1e-14)


def test_rt_simplified_matches_tan_form():
    x = np.array([0.1, 0.7, 1.2, 2.0, 2.9])
    R, T = rt_simplified(x)
    np.testing.assert_allclose(R, -np.tan(x) / (2j + np.tan(x)), atol=1e-14)
    np.testing.assert_allclose(T, 2j / (2j + np.tan(x)), atol=1e-14)


# -- value types

def test_channel_smatrix_checks():
    ChannelSMatrix(0.6, 0.8j).check(symmetric=True)
    with pytest.raises(ValueError):
        ChannelSMatrix(0.6, 0.9j).check()
    with pytest.raises(ValueError):
        ChannelSMatrix(0.6, 0.8).check(symmetric=True)
    with pytest.raises(ValueError):
        ChannelSMatrix(np.nan, 0)


def test_channel_from_probability():
    ch = ChannelSMatrix.from_probability(0.3)
    assert ch.transmission == pytest.approx(0.3)
    assert ch.phase_lock_residual() == 0
    with pytest.raises(ValueError):
        ChannelSMatrix.from_probability(1.2)


def test_full_smatrix_shape():
    with pytest.raises(ValueError):
        FullSMatrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        FullSMatrix(np.eye(3)).channel()
