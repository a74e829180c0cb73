from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from incilab.field import FieldSpec, get_field, point_array
from incilab.poly import (MultiPoly, UniPoly, count_zeros, evaluate, evaluation_matrix, evaluation_rank,
                          gradient, homogenize, monomials, random_poly, restrict_to_line, vanishing_poly)

F3, F5 = FieldSpec(3), FieldSpec(5)


def xy(spec):
    return MultiPoly.parse("x0*x1", spec, 2)


def test_evaluation_examples():
    assert evaluate(xy(F3), (2, 2)).code == 1
    assert evaluate(MultiPoly.zero(F5, 2), (3, 4)).code == 0
    assert evaluate(MultiPoly.parse("x0^2 + x1^2", F5, 2), (1, 2)).code == 0


def test_count_zeros_examples():
    assert count_zeros(xy(F3)) == 5
    for q, n in [(3, 2), (5, 3), (4, 2)]:
        assert count_zeros(MultiPoly.variable(get_field(q), n, 0)) == q ** (n - 1)
    assert count_zeros(MultiPoly.constant(F5, 2, 3)) == 0
    with pytest.raises(ValueError):
        count_zeros(MultiPoly.zero(F5, 2))


def test_vanishing_poly_examples():
    f = vanishing_poly([(0, 0), (1, 1)], 1, F5)
    assert f is not None and f.degree == 1
    # a scalar multiple of y - x: the coefficients of x and y are negatives, no constant
    assert f.coeff((0, 0)).code == 0
    assert (f.coeff((1, 0)) + f.coeff((0, 1))).code == 0
    assert vanishing_poly(list(itertools.product(range(3), repeat=2)), 2, F3) is None
    assert evaluation_rank(point_array(F3, 2), 2, 2, F3) == 6
    one = vanishing_poly([], 3, F5, n=2)
    assert one == MultiPoly.constant(F5, 2, 1)


def test_restriction_examples():
    h = restrict_to_line(MultiPoly.parse("x0^2 + x1^2", F5, 2), (0, 0), (1, 1))
    assert h == UniPoly(F5, [0, 0, 2])
    assert repr(h) == "2*t^2"
    h2 = restrict_to_line(xy(F3), (1, 1), (1, 0))
    assert h2 == UniPoly(F3, [1, 1])
    lin = MultiPoly.parse("2*x0 + 3*x1 + 4", F5, 2)
    assert restrict_to_line(lin, (2, 3), (1, 4))(0) == evaluate(lin, (2, 3)).code


def test_gradient_examples():
    assert all(g.is_zero() for g in gradient(MultiPoly.parse("x0^5", F5, 1)))
    f = MultiPoly.parse("x0*x1*x2", F5, 3)
    assert gradient(f) == [MultiPoly.parse(s, F5, 3) for s in ("x1*x2", "x0*x2", "x0*x1")]
    assert all(g.is_zero() for g in gradient(MultiPoly.constant(F5, 2, 4)))


def test_homogenize_examples():
    assert homogenize(MultiPoly.parse("x0 + 1", F5, 1)) == MultiPoly.parse("x1 + x0", F5, 2)
    assert homogenize(MultiPoly.parse("x0^2 + x1", F5, 2)) == MultiPoly.parse("x1^2 + x0*x2", F5, 3)
    assert homogenize(MultiPoly.parse("x0^2 + x1", F5, 2)).is_homogeneous()


def test_monomial_order_and_count():
    mons = monomials(2, 2)
    assert len(mons) == math.comb(4, 2)
    assert mons[0] == (0, 0)
    assert [sum(m) for m in mons] == sorted(sum(m) for m in mons)


def test_parse_round_trip_and_json():
    f = MultiPoly.parse("3*x0^2*x1 + 4", F5, 2)
    assert MultiPoly.parse(f.to_text(), F5, 2) == f
    assert MultiPoly.from_json(f.to_json(), F5, 2) == f
    with pytest.raises(ValueError):
        MultiPoly.parse("x0^^2", F5, 2)


def test_evaluate_many_matches_scalar():
    rng = np.random.default_rng(3)
    spec = get_field(9)
    f = random_poly(spec, 2, 5, rng)
    pts = point_array(spec, 2)
    vals = f.evaluate_many(pts)
    assert [evaluate(f, tuple(p)).code for p in pts] == vals.tolist()
    emat = evaluation_matrix(pts, 2, 5, spec)
    assert emat.shape == (81, math.comb(7, 2))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (4, 2), (5, 2), (3, 3), (7, 1)]), st.integers(0, 2**32 - 1))
def test_schwartz_zippel_property(shape, seed):
    q, n = shape
    spec = get_field(q)
    f = random_poly(spec, n, q - 1, np.random.default_rng(seed))
    assert count_zeros(f) <= f.degree * q ** (n - 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_homogenize_round_trip(seed):
    rng = np.random.default_rng(seed)
    f = random_poly(F5, 2, 3, rng)
    h = homogenize(f).substitute(0, 1).drop_first()
    assert h == f


def test_ring_arithmetic():
    x, y = MultiPoly.variable(F3, 2, 0), MultiPoly.variable(F3, 2, 1)
    assert (x + y) ** 3 == x ** 3 + y ** 3          # Frobenius in characteristic 3
    assert (x - x).is_zero()
    assert (x * y).degree == 2
