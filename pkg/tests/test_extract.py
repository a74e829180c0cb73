from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from incilab.extract import (Distribution, bias, bias_squared, biw_f1, biw_f2, biw_growth, bourgain_source,
                             closeness_to_min_entropy, foursum_bias_check, identity_adversary,
                             merger_distribution, min_entropy, nikodym_adversary, statistical_distance)
from incilab.field import FieldSpec, get_field
from incilab.kakeya import build_kakeya, nikodym_from_kakeya

Z3 = [(0,), (1,), (2,)]


def test_min_entropy_examples():
    assert min_entropy(Distribution.uniform(range(8))) == 3.0
    assert min_entropy(Distribution.point_mass(range(4), 2)) == 0.0
    assert math.isclose(min_entropy(Distribution.uniform(range(3))), math.log2(3))


def test_statistical_distance_examples():
    u = Distribution.uniform(range(4))
    assert statistical_distance(u, u) == 0
    a = Distribution((0, 1), (1, 0))
    b = Distribution((0, 1), (0, 1))
    assert statistical_distance(a, b) == 1
    half = Distribution((0, 1), (Fraction(1, 2), Fraction(1, 2)))
    assert statistical_distance(half, a) == Fraction(1, 2)
    with pytest.raises(ValueError):
        statistical_distance(a, Distribution((0, 2), (1, 0)))


def test_closeness_examples():
    assert closeness_to_min_entropy(Distribution.uniform(range(8)), 3) == 0
    assert closeness_to_min_entropy(Distribution.point_mass(range(2), 0), 1) == Fraction(1, 2)


def _brute_closeness(d: Distribution, k: int, den: int) -> Fraction:
    cap = Fraction(1, 2**k)
    best = Fraction(1)
    n = len(d.domain)
    for parts in itertools.product(range(den + 1), repeat=n - 1):
        last = den - sum(parts)
        if last < 0:
            continue
        q = [Fraction(x, den) for x in parts + (last,)]
        if max(q) <= cap:
            best = min(best, sum(abs(a - b) for a, b in zip(d.probs, q)) / 2)
    return best


@pytest.mark.parametrize("probs", [(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6), 0),
                                   (Fraction(3, 4), Fraction(1, 4), 0, 0),
                                   (Fraction(5, 12), Fraction(5, 12), Fraction(1, 12), Fraction(1, 12))])
def test_closeness_matches_brute_force(probs):
    d = Distribution(tuple(range(4)), probs)
    for k in (1, 2):
        # the grid contains the optimum when the denominator is a multiple of 12
        assert closeness_to_min_entropy(d, k) == _brute_closeness(d, k, 12)


def test_identity_merger_q3():
    z = merger_distribution(FieldSpec(3), 1, Distribution.uniform(Z3), identity_adversary(3, 1))
    assert z.probs == (Fraction(5, 9), Fraction(2, 9), Fraction(2, 9))


def test_point_mass_source_support():
    q, n = 5, 3
    dom = list(itertools.product(range(q), repeat=n))
    src = Distribution.point_mass(dom, (1, 2, 3))
    z = merger_distribution(FieldSpec(q), n, src, identity_adversary(q, n))
    assert len(z.support()) <= q * q


def test_nikodym_attack():
    w = build_kakeya(5, 2)
    nik = nikodym_from_kakeya(w)
    dom = list(itertools.product(range(5), repeat=2))
    z = merger_distribution(FieldSpec(5), 2, Distribution.uniform(dom), nikodym_adversary(w))
    assert z.mass(nik.points) >= Fraction(4, 5)


def test_nikodym_attack_three_dimensions():
    w = build_kakeya(5, 3)
    nik = nikodym_from_kakeya(w)
    dom = list(itertools.product(range(5), repeat=3))
    z = merger_distribution(FieldSpec(5), 3, Distribution.uniform(dom), nikodym_adversary(w))
    assert z.mass(nik.points) == Fraction(3061, 3125)
    assert z.mass(nik.points) >= Fraction(4, 5)


def test_biw_examples():
    f7 = FieldSpec(7)
    assert biw_growth([1, 2], [1, 2], [1, 2], f7)["size_ABC"] == 5
    f16 = get_field(16)
    sub = [x for x in range(16) if f16.pow(x, 4) == x]      # the copy of F_4
    assert len(sub) == 4
    assert biw_growth(sub, sub, sub, f16)["size_ABC"] == 4


def test_biw_f1_f2_are_distributions():
    f5 = FieldSpec(5)
    u = Distribution.uniform(range(5))
    pt = Distribution.point_mass(range(5), 2)
    d = biw_f1(pt, u, pt, f5)
    assert d.probs == tuple([Fraction(1, 5)] * 5)
    d2 = biw_f2([u] * 9, f5)
    assert sum(d2.probs) == 1


def test_bias_examples():
    assert bias_squared(Z3, Z3) == Fraction(1, 9)
    assert bias(Z3, Z3) == pytest.approx(1 / 3)
    assert bias([(0,)], [(0,)]) == 1
    assert bias([(1,)], Z3) == 0


def test_foursum_examples():
    r = foursum_bias_check([(0,)], [(0,)])
    assert r["holds_exact"] and r["lhs"] == 1 and r["rhs"] == pytest.approx(1)
    r = foursum_bias_check([(1,)], Z3)
    assert r["lhs"] == 0 and r["rhs"] >= 0


def test_bourgain_source():
    assert bourgain_source(1) == [(0, 0), (1, 1), (2, 1)]
    s = bourgain_source(2)
    assert len(s) == 9 and len(set(s)) == 9


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=9, unique=True),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=9, unique=True))
def test_bias_bound_and_four_sum(a, b):
    assert bias_squared(a, b) * len(a) * len(b) <= 9
    assert foursum_bias_check(a, b)["holds_exact"]


def test_distribution_json_round_trip():
    d = Distribution((0, 1, 2), (Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)))
    j = d.to_json()
    assert j["probs"] == ["1/3", "1/2", "1/6"]
    assert Distribution.from_json(j) == d
    with pytest.raises(ValueError):
        Distribution((0, 1), (Fraction(1, 2), Fraction(1, 3)))
