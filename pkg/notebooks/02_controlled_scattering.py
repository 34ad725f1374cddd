"""
Controlled scattering between two graphs
========================================

Alice's graph acts as the control: if her particle leaves through lead 1,
Bob's graph is switched from configuration B to B'.  This script builds
the joint state, its density matrix and both reduced states.
"""

# %%
import numpy as np

from qge import (
    ChannelSMatrix, ControlledPair, density_matrix, expected_transmission_B, joint_state,
    reduce_A, reduce_B,
)

A = ChannelSMatrix.from_probability(0.3)      # |t_A|^2 = 0.3
B = ChannelSMatrix.from_probability(0.8)
Bp = ChannelSMatrix.from_probability(0.1)
pair = ControlledPair(A, B, Bp)

psi = joint_state(pair)
print("amplitudes |00>,|01>,|10>,|11>:", np.round(psi.vector, 4))
print("Schmidt coefficients:", np.round(psi.schmidt_coefficients(), 6))

# %%
# Reduced states
# --------------
# Alice's diagonal is untouched by the control; the coherence shrinks by
# the overlap of Bob's two configurations.
rho = density_matrix(psi)
print("rho_A =\n", np.round(reduce_A(rho).entries, 4))
print("overlap <B'|B> =", np.round(pair.overlap(), 4))

# %%
# Bob sees a mixture
# ------------------
# Bob's transmission probability is a p-weighted mix of his two
# configurations with p = |t_A|^2.
rhoB = reduce_B(rho).entries
p = A.transmission
print("<1|rho_B|1> =", rhoB[1, 1].real)
print("(1-p)|t_B|^2 + p|t_B'|^2 =", expected_transmission_B(p, B.t, Bp.t))
