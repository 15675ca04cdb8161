"""
Squeezing, marginals and a symmetry probe
=========================================

Multiplication by a nonzero field element ``lam`` permutes the basis and
rescales phase space: ``S^dag Z_a S = Z_{a/lam}`` and ``S^dag X_a S = X_{a lam}``.
For the Fourier-invariant coherent states this gives a neat identity
between X and Z expectation values.
"""

import numpy as np

from qps import (XI_PLUS, coherent_minus, coherent_plus, make_field, marginals,
                 squeeze_op, su2_coherent, wigner_of, x_op, z_op)
from qps.hilbert import StateVector
from qps.pauli import fourier_op

n = 3
F = make_field(n)
worst = 0.0
for lam in F:
    if not lam:
        continue
    S = squeeze_op(lam)
    for a in F:
        assert np.array_equal((S.dag @ z_op(a) @ S).matrix, z_op(a / lam).matrix)
        assert np.array_equal((S.dag @ x_op(a) @ S).matrix, x_op(a * lam).matrix)
        for st in (coherent_plus(n), coherent_minus(n)):
            lhs = (S.dag @ x_op(a) @ S).expect(st)
            rhs = (S.dag @ z_op(a * lam * lam) @ S).expect(st)
            worst = max(worst, abs(lhs - rhs))
print(f"conjugation relations hold for all lam, a; expectation identity error {worst:.1e}")

# %%
# Marginals.  Summing W over alpha gives ``2^n |xi|^(2h) / (1 + |xi|^2)^n``,
# which is ``2^n`` times the usual coherent-state distribution.  The factor
# ``2^n`` comes from the kernel normalization (``sum W = 2^n``); pass
# ``normalization="unit-sum"`` to divide it out.
h = np.array([bin(F.self_dual_basis.encode(x)).count("1") for x in F])
for xi in (XI_PLUS, 0.8):
    beta_m, _ = marginals(wigner_of(su2_coherent(xi, n)))
    expected = 2 ** n * abs(xi) ** (2 * h) / (1 + abs(xi) ** 2) ** n
    print(f"xi={xi:.4f}: marginal error {np.abs(beta_m - expected).max():.1e}")

unit = wigner_of(coherent_plus(n), normalization="unit-sum")
print("unit-sum total:", unit.total())

# %%
# Is ``W(alpha, beta) = W(beta, alpha)`` for Fourier eigenstates?  For the two
# coherent eigenstates it holds at every size checked here.  A generic
# eigenvector of F (a random vector projected onto the +1 eigenspace) does
# not share the symmetry, so this is a property of these particular states.
for m in range(1, 7):
    g = wigner_of(coherent_plus(m)).values
    print(f"n={m}: coherent_plus |W - W^T| = {np.abs(g - g.T).max():.1e}")

rng = np.random.default_rng(0)
f = fourier_op(F).matrix
v = rng.normal(size=F.order) + 1j * rng.normal(size=F.order)
v = (v + f @ v) / 2
v /= np.linalg.norm(v)
g = wigner_of(StateVector(F, v)).values
print(f"random +1 eigenvector: |F v - v| = {np.linalg.norm(f @ v - v):.1e}, "
      f"|W - W^T| = {np.abs(g - g.T).max():.2f}")
