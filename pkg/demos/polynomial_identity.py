"""
Polynomials over finite fields and the Schwartz-Zippel bound
============================================================

A nonzero polynomial of degree d in n variables vanishes on at most d q^(n-1)
points of F_q^n. Count zeros exactly and compare.
"""

from __future__ import annotations

import numpy as np

from incilab.field import get_field
from incilab.poly import MultiPoly, count_zeros, random_poly, restrict_to_line, vanishing_poly

f7 = get_field(7)
f = MultiPoly.parse("x0^2 - x1", f7, 2)          # a parabola
print(f"{f.to_text()} over F_7: {count_zeros(f)} zeros, bound {f.degree * 7:.0f}")

# restriction to the line (1, 1) + t(1, 2)
print("restricted to a line:", restrict_to_line(f, (1, 1), (1, 2)))

# random polynomials over F_9 never beat the bound
rng = np.random.default_rng(0)
f9 = get_field(9)
worst = 0.0
for _ in range(200):
    g = random_poly(f9, 2, 4, rng)
    if not g.is_zero():
        worst = max(worst, count_zeros(g) / (g.degree * 9))
print(f"F_9, degree <= 4: worst zeros / (d q) = {worst:.3f}")

# any 5 points in the plane lie on a nonzero conic
pts = [(0, 0), (1, 3), (2, 5), (4, 4), (6, 1)]
v = vanishing_poly(pts, 2, f7)
print("a conic through five points:", v.to_text())
