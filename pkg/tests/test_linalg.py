from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from incilab.field import FieldSpec, get_field
from incilab.linalg import (GaussianRational, nullspace_exact, nullspace_gf, rank_exact, rank_gf,
                            rref_exact, rref_gf, solve_gf)


def test_rank_gf_examples():
    f = FieldSpec(5)
    assert rank_gf(np.eye(4, dtype=np.int64), f) == 4
    assert rank_gf(np.ones((3, 3), dtype=np.int64), f) == 1
    # singular mod 3 but not over Q
    assert rank_gf(np.array([[1, 2], [2, 1]]), FieldSpec(3)) == 1
    assert rank_exact([[1, 2], [2, 1]]) == 2


def test_rref_gf_pivots():
    r, piv = rref_gf(np.array([[0, 2, 4], [1, 1, 1]]), FieldSpec(5))
    assert piv == [0, 1]
    assert r.tolist() == [[1, 0, 4], [0, 1, 2]]


def test_nullspace_and_solve():
    f = FieldSpec(7)
    a = np.array([[1, 2, 3], [2, 4, 6]])
    ns = nullspace_gf(a, f)
    assert len(ns) == 2
    for v in ns:
        assert not np.any((a @ np.asarray(v)) % 7)
    x = solve_gf(np.array([[1, 1], [1, 6]]), np.array([2, 0]), f)
    assert [int(v) for v in x] == [1, 1]
    assert solve_gf(np.array([[1, 1], [2, 2]]), np.array([1, 0]), f) is None


def test_extension_field_rank():
    f = get_field(4)
    a = f.code((0, 1))
    m = np.array([[1, a], [a, f.mul(a, a)]])     # second row = alpha * first
    assert rank_gf(m, f) == 1


def test_exact_rational():
    rows = [[Fraction(1, 2), 1], [1, 2]]
    assert rank_exact(rows) == 1
    r, piv = rref_exact([[2, 4], [1, 3]])
    assert piv == [0, 1] and r == [[1, 0], [0, 1]]
    (v,) = nullspace_exact([[1, 1, 1]], 3)[:1]
    assert sum(v) == 0


def test_gaussian_rationals():
    i = GaussianRational.of(1j)
    assert i * i == GaussianRational.of(-1)
    assert (GaussianRational(Fraction(3), Fraction(4))).norm() == 25
    assert rank_exact([[1, i], [i, -1]]) == 1
    assert rank_exact([[1, i], [-i, 1]]) == 1
    assert rank_exact([[2, i], [-i, 2]]) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_gf_matches_exact_for_large_prime(rows):
    # 3x3 minors are at most 162 in size, so F_211 and Q agree on rank
    assert rank_gf(np.array(rows) % 211, FieldSpec(211)) == rank_exact(rows)
