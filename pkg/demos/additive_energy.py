"""
Additive energy, Ruzsa and Balog-Szemeredi-Gowers
=================================================

Progressions have huge energy and small doubling; random sets do not. The
BSG procedure digs a structured piece out of a set with large energy.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from incilab.addcomb import (AbelianSet, PairGraph, bsg_extract, energy, find_good_lambda, quadruple_count,
                             ruzsa_triangle, sumset)

ap = AbelianSet.ints(range(0, 60, 3))
rnd = AbelianSet.ints(np.random.default_rng(2).choice(10_000, 20, replace=False).tolist())
for name, s in [("progression", ap), ("random", rnd)]:
    print(f"{name:12s} |A|={len(s)}  |A+A|={len(sumset(s, s)):4d}  E={float(energy(s, s)):7.2f}")

a, b, c = AbelianSet.mod(31, [1, 2, 3]), AbelianSet.mod(31, [5, 9]), AbelianSet.mod(31, [0, 7, 20])
lhs, rhs = ruzsa_triangle(a, b, c)
print(f"\nRuzsa triangle: |A||B-C| = {lhs} <= |A-B||A-C| = {rhs}")

print("good dilate for {1,2,4,8} in F_31:", find_good_lambda(AbelianSet.mod(31, [1, 2, 4, 8])))

# an interval with its far half scattered
mixed = AbelianSet.ints(list(range(20)) + [1000 * k for k in range(1, 21)])
k = Fraction(len(mixed) ** 3, quadruple_count(mixed, mixed))
a2, b2, rep = bsg_extract(mixed, mixed, PairGraph.complete(mixed, mixed), k)
print(f"\nBSG with K={float(k):.2f}: kept {rep.size_a} x {rep.size_b}, |A'-B'| = {rep.size_diff}")
