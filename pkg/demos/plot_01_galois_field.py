"""
A tour of GF(2^n)
=================

Field elements are bit masks of polynomial coefficients.  Everything the
phase space needs (multiplication, the trace and the additive character)
lives in :mod:`qps.gf`.
"""

import numpy as np

from qps import gf

# %%
# GF(4) is small enough to read off by hand.  The primitive element ``s``
# satisfies ``s^2 = s + 1``, so ``s^2`` is also the inverse of ``s``.
F = gf.make_field(2)
s = F.sigma
print("s^2 == s + 1:", s * s == s + F.one)
print("1/s == s^2:  ", s.inverse() == s * s)

for x in gf.enumerate_elements(F, "power"):
    print(f"{x.label():>4}  tr={gf.trace(x)}  chi={gf.character(x):+d}")

# %%
# The trace is linear over Z_2 and balanced: half the elements have trace 1.
# Summing the character over any nonzero multiple gives zero.
for n in (3, 6, 10):
    G = gf.make_field(n)
    e = G.elements
    table = G.character_values(G.mul_values(e[:, None], e[None, :]))
    print(f"n={n:2d}: balanced trace {G.trace_values(e).sum() == G.order // 2}, "
          f"character sums {np.unique(table.sum(axis=0)).tolist()}")

# %%
# Bases and their duals.  The Gram matrix ``tr(e_i f_j)`` is the identity
# exactly when ``f`` is the dual of ``e``; a self-dual basis is its own dual.
poly = gf.polynomial_basis(F)
dual = gf.dual_basis(poly)
print("polynomial basis:", [x.label() for x in poly])
print("its dual:        ", [x.label() for x in dual])
print(gf.gram_matrix(poly, dual))

for n in range(1, 9):
    sd = gf.self_dual_basis(gf.make_field(n))
    ok = np.array_equal(gf.gram_matrix(sd), np.eye(n, dtype=int))
    print(f"n={n}: self-dual basis {[x.label() for x in sd]} gram=I {ok}")

# %%
# Coordinates in the self-dual basis are just traces, ``c_k = tr(x e_k)``.
# They become the qubit labels in the next demo.
G = gf.make_field(3)
sd = G.self_dual_basis
for x in G:
    print(f"{x.label():>4} -> {gf.coordinates(x, sd)}")
