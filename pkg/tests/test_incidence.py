from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from incilab.incidence import (Line2, Line3, apply, beck_stats, count_incidences, count_joints, cs_bounds,
                               distance_stats, elekes_sharir_lines, embed, image_line, infinity_of,
                               joints_grid, line_through, proj_lines, proj_points, rich_lines,
                               send_to_infinity, st_grid)


def test_line_normalisation():
    assert Line2.make(2, 4, 6) == Line2.make(1, 2, 3)
    assert Line2.from_slope(1, 0).contains((5, 5))
    assert line_through((0, 0), (1, 1)) == Line2.make(1, -1, 0)
    with pytest.raises(ValueError):
        Line2.make(0, 0, 1)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_st_grid_incidences(m):
    pts, lines = st_grid(m)
    assert len(pts) == 2 * m**3 and len(lines) == m**3
    assert count_incidences(pts, lines) == m**4
    assert cs_bounds(m**4, len(pts), len(lines))["holds"]


def test_cs_bounds_exact_edge():
    # a single line through four points: I = 4 <= 2(4 * 1 + 1)
    assert cs_bounds(4, 4, 1)["holds"]
    assert not cs_bounds(100, 4, 1)["holds"]


def test_beck_on_grid():
    grid = [(x, y) for x in range(3) for y in range(3)]
    s = beck_stats(grid)
    assert s["lines_spanned"] == 20 and s["max_collinear"] == 3 and s["ordinary_lines"] == 12
    assert len(rich_lines(grid, 3)) == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_joints_grid(n):
    assert count_joints(joints_grid(n)) == n**3


def test_coplanar_lines_have_no_joints():
    lines = [Line3.make((0, 0, 0), (1, 0, 0)), Line3.make((0, 0, 0), (0, 1, 0)),
             Line3.make((0, 0, 0), (1, 1, 0))]
    assert count_joints(lines) == 0


def test_unit_square_distances():
    s = distance_stats([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert s["Q"] == 96
    assert s["distinct_sq_distances"] == 3 and s["distinct_nonzero"] == 2
    assert s["lower_bound"] == Fraction(256, 96)
    assert s["unit_pairs"] == 4


@settings(max_examples=30, deadline=None)
@given(st.sets(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=2, max_size=10))
def test_distance_lower_bound(pts):
    s = distance_stats(sorted(pts))
    assert s["distinct_sq_distances"] >= s["lower_bound"]


def test_rotation_lines_consistent():
    r = elekes_sharir_lines([(0, 0), (1, 0), (0, 1), (2, 3)])
    assert r["consistent"]
    assert r["lines"] == 4 * 4          # one line per ordered pair (a, c)


def test_projective_plane_counts():
    assert len(proj_points(3)) == 13 and len(proj_lines(5)) == 31
    assert embed((2, 1), 3) == (2, 1, 1)
    assert embed((2, 1), 3, leading=True) == (1, 2, 1)
    assert infinity_of(Line2.make(1, -1, 0, p=3)) == (1, 1, 0)


def test_send_to_infinity():
    p = 5
    a, b = embed((0, 0), p), embed((1, 2), p)
    m = send_to_infinity(a, b, p)
    assert apply(m, a) == (1, 0, 0) and apply(m, b) == (0, 1, 0)
    # the line through a and b becomes Z = 0
    ln = line_through((0, 0), (1, 2), p)
    assert image_line(m, (ln.a, ln.b, ln.c)) == (0, 0, 1)
    for x in itertools.product(range(p), repeat=2):
        img = apply(m, embed(x, p))
        assert (img[2] == 0) == ln.contains(x)
