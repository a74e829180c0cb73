"""
Matrix scaling
==============

Alternate row and column normalisation of a tall nonnegative matrix, and the
same scaling found by minimising a convex potential.
"""

from __future__ import annotations

import numpy as np

from incilab.scaling import l2_scale, scale_by_potential, sinkhorn_scale

rng = np.random.default_rng(3)
b = rng.random((6, 3))
res = sinkhorn_scale(b, eps=1e-10)
s = res.apply(b)
print(f"6x3 random: {res.iterations} sweeps, rows {np.round(s.sum(axis=1), 6)}, columns {np.round(s.sum(axis=0), 6)}")

pot = scale_by_potential(b)
print(f"potential descent: {pot.iterations} steps, max difference {np.abs(pot.apply(b) - s).max():.2e}")

# zero patterns slow things down: the limit of [[1,1],[0,1]] is not attained
slow = np.array([[1.0, 1.0], [0.0, 1.0]])
for eps in (1e-2, 1e-3, 1e-4):
    r = sinkhorn_scale(slow, eps=eps)
    print(f"[[1,1],[0,1]] to eps={eps:g}: {r.iterations} sweeps")

a = rng.normal(size=(4, 2))
r = l2_scale(a, 1e-9)
print("l2 scaling, squared row norms:", np.round((r.apply(a) ** 2).sum(axis=1), 9))
