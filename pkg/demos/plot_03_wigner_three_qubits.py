"""
Wigner function of a three-qubit coherent state
===============================================

The phase space of three qubits is the 8 x 8 grid GF(8) x GF(8).  For the
Fourier-invariant coherent state the Wigner function has one dominant peak
at the origin and a few small negative values.

The grid is printed as text; if matplotlib is installed it is also drawn.
"""

import numpy as np

from qps import coherent_plus, marginals, wigner_of
from qps.formats import grid_to_ascii
from qps.wigner import wigner_by_kernels

grid = wigner_of(coherent_plus(3), method="dense")
np.set_printoptions(precision=3, suppress=True, linewidth=100)
print("rows alpha, columns beta (canonical order)")
print(grid.values)
print(grid_to_ascii(grid))

# %%
# A few sanity numbers: the grid is real, sums to 2^n = 8, and its
# most negative value is small next to the peak.
v = grid.values
print(f"sum = {grid.total():.12f}, peak = {v.max():.4f}, min = {v.min():.4f}, "
      f"negative points = {(v < -1e-12).sum()}")
print("imaginary residue:", grid.imag_residue)

# %%
# The same values straight from the kernels ``Tr[rho Delta(alpha, beta)]``.
print("max |dense - kernel traces| =",
      np.abs(wigner_by_kernels(coherent_plus(3)).real - v).max())

# %%
# Summing out one axis gives 2^n times a measurement distribution.
beta_m, alpha_m = marginals(grid)
print("sum over alpha:", np.round(beta_m, 6))
print("sum over beta: ", np.round(alpha_m, 6))

# %%
# Optional picture.
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(4.5, 4))
    im = ax.imshow(v, cmap="RdBu_r", vmin=-abs(v).max(), vmax=abs(v).max())
    ax.set_xlabel("beta index")
    ax.set_ylabel("alpha index")
    ax.set_title("W for three qubits, xi = sqrt(2) - 1")
    fig.colorbar(im)
    fig.tight_layout()
    fig.savefig("wigner_three_qubits.png", dpi=120)
    print("wrote wigner_three_qubits.png")
