"""
Sylvester-Gallai configurations and design matrices
===================================================

Every special line contributes rows with three nonzeros that kill the
configuration; the rank of the resulting design matrix bounds its dimension.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from incilab.sgdesign import Configuration, check_sg, design_from_config, diag_rank_bound, rank_lower_bound


def projective(p: int, d: int) -> list[tuple[int, ...]]:
    return [v for v in itertools.product(range(p), repeat=d)
            if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1]


for name, c in [("Fano plane", Configuration(projective(2, 3), 2)),
                ("PG(2,3)", Configuration(projective(3, 3), 3)),
                ("five collinear", Configuration([(i, 2 * i + 1) for i in range(5)]))]:
    dm = design_from_config(c)
    q, k, t = dm.params
    print(f"{name:15s} n={c.n:2d} rows={len(dm.rows):3d} (q,k,t)=({q},{k},{t}) rank={dm.rank():2d} "
          f"bound={float(rank_lower_bound(q, k, t, c.n)):.2f} dim={c.span_dim()}")

grid = Configuration([(x, y) for x in range(3) for y in range(3)])
print("\n3x3 grid:", check_sg(grid, Fraction(5, 9)))

m = [[3, 1, 1, 1], [1, 3, 1, 1], [1, 1, 3, 1], [1, 1, 1, 3]]
print("diagonal-dominance rank bound for 2I + J:", diag_rank_bound(m, 3, 1, verify=True))
