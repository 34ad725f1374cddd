"""
Single-qubit gates from star-graph phases
=========================================

The star graph's S-matrix, written in terms of the dangling-edge phase x
and the lead phases alpha and beta, reproduces common single-qubit gates.
Each is checked up to a global phase.
"""

# %%
import numpy as np

from qge import Gate, GateSpec, verify_gate

specs = [
    GateSpec(Gate.IDENTITY),
    GateSpec(Gate.GLOBAL_PHASE, delta=np.pi / 3),
    GateSpec(Gate.PAULI_X, alpha=0.3),
    GateSpec(Gate.PAULI_Z),
    GateSpec(Gate.HADAMARD, sign=1),
    GateSpec(Gate.HADAMARD, sign=-1),
]
for spec in specs:
    rep = verify_gate(spec)
    p = rep.params
    print(f"{spec.gate.value:13s} x={p.x:+.4f} alpha={p.alpha:+.4f} beta={p.beta:+.4f} "
          f"deviation={rep.deviation:.1e} {'ok' if rep.ok else 'FAIL'}")

# %%
# Integer offsets
# ---------------
# Shifting any parameter by its period leaves the gate unchanged.
rep = verify_gate(GateSpec(Gate.HADAMARD, n_phi=2, n_alpha=-3, n_beta=1))
print(np.round(rep.matrix * np.exp(-1j * np.angle(rep.matrix[0, 0])), 6))
