from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from incilab.addcomb import (AbelianSet, PairGraph, batch_good_lambda, batch_growth, bsg_extract, difference,
                             energy, find_good_lambda, growth_set, quadruple_count, ruzsa_cover, ruzsa_triangle,
                             stab, stab_closure_report, subsets_of_size, sum_product_stats, sumset)


def test_sumset_and_difference():
    a, b = AbelianSet.ints([0, 1]), AbelianSet.ints([0, 10])
    assert sumset(a, b).as_set() == {0, 1, 10, 11}
    assert difference(a, a).as_set() == {-1, 0, 1}
    assert sumset(AbelianSet.mod(5, [3, 4]), AbelianSet.mod(5, [4])).as_set() == {2, 3}


def test_energy_small_cases():
    a = AbelianSet.ints([0, 1, 2])
    assert quadruple_count(a, a) == 19          # multiplicities 1, 2, 3, 2, 1
    assert energy(a, a) == Fraction(81, 19)
    full = AbelianSet.mod(7, range(7))
    assert quadruple_count(full, full) == 7**3
    assert energy(full, full) == 7


@pytest.mark.parametrize("n", [1, 2, 5, 10, 17])
def test_energy_of_progression(n):
    ap = AbelianSet.ints(range(0, 3 * n, 3))
    assert quadruple_count(ap, ap) == (2 * n**3 + n) // 3


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(-20, 20), min_size=1, max_size=12),
       st.sets(st.integers(-20, 20), min_size=1, max_size=12))
def test_energy_sandwich(xs, ys):
    a, b = AbelianSet.ints(xs), AbelianSet.ints(ys)
    e = energy(a, b)
    assert max(len(a), len(b)) <= e <= len(sumset(a, b))


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(0, 12), min_size=1, max_size=6),
       st.sets(st.integers(0, 12), min_size=1, max_size=6),
       st.sets(st.integers(0, 12), min_size=1, max_size=6))
def test_ruzsa_triangle(xs, ys, zs):
    lhs, rhs = ruzsa_triangle(AbelianSet.mod(13, xs), AbelianSet.mod(13, ys), AbelianSet.mod(13, zs))
    assert lhs <= rhs


def test_good_lambda_and_growth_match_batch():
    p = 13
    subs = subsets_of_size(p, 3)
    best = batch_good_lambda(p, subs)
    grow = batch_growth(p, subs)
    for row in (0, 5, 100, len(subs) - 1):
        a = AbelianSet.mod(p, subs[row].tolist())
        assert find_good_lambda(a)[1] == best[row]
        assert len(growth_set(a)) == grow[row]


def test_stab_of_progression():
    # |A + A| = |A - A| = 9 for A = {0..4} in F_101, while other dilates grow more
    a = AbelianSet.mod(101, range(5))
    s = stab(a, Fraction(9, 5))
    assert s.as_set() == {1, 100}
    for row in stab_closure_report(a, Fraction(9, 5)):
        assert row["neg_ratio"] == row["inv_ratio"] == Fraction(9, 5)


def test_ruzsa_cover_on_subspace():
    sub = AbelianSet.vecs(2, 3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    chosen, rep = ruzsa_cover(sub)
    assert rep.covered and rep.r == 1 and rep.span_size == 4
    assert rep.size_3a == 4


def test_bsg_on_progression():
    ap = AbelianSet.ints(range(40))
    k = Fraction(40**3, quadruple_count(ap, ap))
    a2, b2, rep = bsg_extract(ap, ap, PairGraph.complete(ap, ap), k, eps=0.25)
    assert rep.size_a > 0 and rep.size_b > 0
    assert rep.size_diff <= 3 * len(ap)


def test_bsg_rejects_mismatch():
    with pytest.raises(ValueError):
        bsg_extract(AbelianSet.ints([1]), AbelianSet.ints([1, 2]),
                    PairGraph(AbelianSet.ints([1]), AbelianSet.ints([1, 2]), {(0, 0)}), 2)


def test_sum_product_stats():
    s = sum_product_stats([1, 2, 3])
    assert s["sumset"] == 5 and s["productset"] == 6 and s["max"] == 6


def test_json_round_trip():
    a = AbelianSet.vecs(3, 2, [(1, 2), (0, 0)])
    assert AbelianSet.from_json(a.to_json()).as_set() == a.as_set()
    assert np.array_equal(subsets_of_size(4, 2)[0], [0, 1])
