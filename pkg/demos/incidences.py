"""
Incidences, joints and distinct distances
=========================================

The grid examples that make the Szemeredi-Trotter and joints bounds tight,
and the energy bound on distinct distances.
"""

from __future__ import annotations

from incilab.incidence import (beck_stats, count_incidences, count_joints, cs_bounds, distance_stats,
                               joints_grid, st_grid)

for m in (2, 3, 4):
    pts, lines = st_grid(m)
    i = count_incidences(pts, lines)
    cs = cs_bounds(i, len(pts), len(lines))
    print(f"M={m}: {len(pts)} points, {len(lines)} lines, {i} incidences; "
          f"Cauchy-Schwarz bound {min(cs['bound_points'], cs['bound_lines']):.0f}")

for n in (2, 3, 5):
    lines = joints_grid(n)
    print(f"N={n}: {len(lines)} axis lines, {count_joints(lines)} joints, L^1.5 = {len(lines) ** 1.5:.0f}")

grid = [(x, y) for x in range(4) for y in range(4)]
b = beck_stats(grid)
print(f"\n4x4 grid spans {b['lines_spanned']} lines, {b['ordinary_lines']} of them ordinary")
d = distance_stats(grid)
print(f"distinct squared distances {d['distinct_nonzero']} (nonzero), Q = {d['Q']}, "
      f"lower bound {float(d['lower_bound']):.2f}")
