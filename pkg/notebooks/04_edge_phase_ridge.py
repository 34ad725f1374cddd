"""
Maximal entanglement from a phase inside Bob's graph
====================================================

Alice and Bob both hold symmetric star graphs.  The control adds phi on
the dangling edge of Bob's graph.  With k_A l = arctan 2, Alice splits
evenly and the entropy reaches one bit along the curve where Bob's two
configurations become orthogonal, tan(k_B l) tan(k_B l + phi) = -4.
"""

# %%
import numpy as np

from qge import analyze, edge_phase_pair, entropy_surface, solve_phi, tan_product_residual

n = 201
tab = entropy_surface("edge", {"kAl": np.arctan(2), "kBl": (0, np.pi, n), "phi": (0, np.pi, n)})
H = tab.column("entropy").reshape(n, n)
kbl = np.linspace(0, np.pi, n)
print("largest entropy on the grid:", H.max())

# %%
# The ridge
# ---------
# Points on the solved curve reach one bit to rounding.
for x in (0.2, np.pi / 4, 1.0, np.pi / 2, 2.5):
    phi = solve_phi(x, 0)
    h = analyze(edge_phase_pair(np.arctan(2), x, phi)).entropy
    print(f"k_B l={x:.3f}  phi={phi:.6f}  residual={tan_product_residual(x, phi):.1e}  H={h:.15f}")

# %%
# Plot
# ----
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(H.T, origin="lower", extent=(0, np.pi, 0, np.pi), cmap="magma")
    ax.plot(kbl, solve_phi(kbl, 0) % np.pi, "k:", lw=1.5)
    ax.set_xlabel("k_B l")
    ax.set_ylabel("phi")
    fig.colorbar(im, label="entropy (bits)")
    fig.savefig("edge_phase_ridge.png", dpi=120, bbox_inches="tight")
    print("wrote edge_phase_ridge.png")
