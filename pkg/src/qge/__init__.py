"""Entangled states from controlled scattering between two-channel quantum graphs."""

__version__ = "0.1.0"

from .graph import (
    BoundaryCondition, Edge, GraphError, Lead, MetricGraph, StarPhaseParams, Violation,
    graph_from_dict, graph_to_dict, load_graph, make_single_edge, make_star4, save_graph,
    validate, with_edge_phase,
)
from .scattering import (
    ChannelSMatrix, FullSMatrix, ResonanceError, global_smatrix, rt_simplified,
    star4_analytic, star4_phase_form, star4_smatrix, vertex_matrix,
)
from .channel import (
    ControlledPair, DensityMatrix, JointState, QubitState, density_matrix, edge_phase_pair,
    expected_transmission_B, joint_state, joint_state_channel_phase, joint_state_edge_phase,
    reduce_A, reduce_B, scatter_state,
)
from .entanglement import (
    EntanglementReport, Gate, GateSpec, SweepMode, analyze, entropy, entropy_surface,
    gate_params, lambda_pm, max_ent_residual, separability_residual, solve_phi,
    tan_product_residual, verify_gate,
)
