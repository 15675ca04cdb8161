"""
Coherent states that are Fourier eigenstates
=============================================

Labelling the computational basis by field elements in self-dual
coordinates turns an n-qubit SU(2) coherent state into a product of
identical single-qubit states.  Two of them are fixed by the finite
Fourier transform.
"""

from math import comb

import numpy as np

from qps import (XI_MINUS, XI_PLUS, Basis, basis_change_permutation, coherent_minus,
                 coherent_plus, dicke_state, make_field, su2_coherent,
                 tensor_factor_check)
from qps.pauli import apply_fourier, fourier_op

# %%
# The amplitude on ``|gamma>`` is ``xi^h(gamma)`` up to normalization, where
# ``h`` counts the ones among the self-dual coordinates of ``gamma``.
psi = su2_coherent(0.5, 2)
print("amplitudes / amplitudes[0]:", np.round(psi.amplitudes / psi.amplitudes[0], 6))

# %%
# It is the usual Dicke expansion.
n, xi = 4, 0.3 + 0.4j
expansion = sum(np.sqrt(comb(n, k)) * xi ** k * dicke_state(n, k).amplitudes
                for k in range(n + 1)) / (1 + abs(xi) ** 2) ** (n / 2)
print("Dicke expansion error:", np.abs(su2_coherent(xi, n).amplitudes - expansion).max())

# %%
# With ``xi = +-sqrt(2) - 1`` the single-qubit factor is an eigenvector of
# the Hadamard gate, so the whole state is an eigenvector of ``F``.
print(f"xi+ = {XI_PLUS:.15f}, xi- = {XI_MINUS:.15f}")
for n in range(1, 6):
    f = fourier_op(make_field(n))
    plus, minus = coherent_plus(n), coherent_minus(n)
    r_plus = np.linalg.norm((f @ plus).amplitudes - plus.amplitudes)
    r_minus = np.linalg.norm((f @ minus).amplitudes - (-1) ** n * minus.amplitudes)
    print(f"n={n}: |F xi+ - xi+| = {r_plus:.1e}   |F xi- - (-1)^n xi-| = {r_minus:.1e}")

# %%
# Beyond the dense cap the transform is applied one qubit at a time.
big = coherent_plus(12)
print("n=12 residual:", np.linalg.norm(apply_fourier(big).amplitudes - big.amplitudes))

# %%
# The labelling matters.  In GF(4) the basis ``{s, s^3}`` is not self-dual;
# relabelling the same state in it destroys the product structure, and the
# permutation between the two labellings is a CNOT.
F = make_field(2)
s = F.sigma
other = Basis((s, s ** 3))
state = su2_coherent(0.5, 2)
moved = state.relabel(other)
print("self-dual labelling factorizes:", tensor_factor_check(state) is not None)
print("{s, s^3} labelling factorizes: ", tensor_factor_check(moved) is not None)
print(basis_change_permutation(other, F.self_dual_basis).matrix.real.astype(int))
