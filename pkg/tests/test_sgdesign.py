from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from incilab.sgdesign import (Configuration, check_sg, design_from_config, diag_rank_bound, exact_rank,
                              idempotent_latin_square, ordinary_lines, rank_lower_bound, special_lines,
                              triple_system)

FANO = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
GRID3 = [(x, y) for x in range(3) for y in range(3)]


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration([(1, 2), (2, 4)], 5)           # scalar multiples
    with pytest.raises(ValueError):
        Configuration([(0, 0), (1, 1)], 3)
    with pytest.raises(ValueError):
        Configuration([(1, 1), (1, 1)])
    c = Configuration(FANO, 2)
    assert Configuration.from_json(c.to_json()).vectors == c.vectors
    assert c.span_dim() == 3


@pytest.mark.parametrize("r", range(3, 31))
def test_triple_system_properties(r):
    sq = idempotent_latin_square(r)
    assert all(sq[a][a] == a for a in range(r))
    assert all(sorted(row) == list(range(r)) for row in sq)
    assert all(sorted(col) == list(range(r)) for col in zip(*sq))
    t = triple_system(r)
    assert len(t) == r * r - r
    assert all(len(set(x)) == 3 for x in t)
    for e in range(r):
        assert sum(e in x for x in t) == 3 * (r - 1)
    for a, b in itertools.combinations(range(r), 2):
        assert sum(a in x and b in x for x in t) <= 6


def test_triple_system_rejects_tiny():
    with pytest.raises(ValueError):
        triple_system(2)


def test_fano_is_sg():
    c = Configuration(FANO, 2)
    assert len(special_lines(c)) == 7
    res = check_sg(c)
    assert res.holds and res.counts == [7] * 7


def test_grid_is_five_ninths_sg():
    c = Configuration(GRID3)
    assert check_sg(c, Fraction(5, 9)).holds
    res = check_sg(c, Fraction(2, 3))
    assert not res.holds and res.delta_achieved == Fraction(5, 9)
    assert res.counts[4] == 9 and res.counts[1] == 5


@pytest.mark.parametrize("vecs,p", [(FANO, 2), ([(0, 1), (1, 0), (1, 1), (1, 2)], 3),
                                     ([(i, 2 * i + 1) for i in range(5)], None)])
def test_design_rows_and_rank(vecs, p):
    c = Configuration(vecs, p)
    d = design_from_config(c)
    assert all(len(r) == 3 for r in d.rows)
    assert d.params[0] == 3
    dim = c.span_dim()
    assert d.rank() <= c.n - dim
    # A V = 0 gives rank(V) <= n - rank(A); SG-type designs push the rank close to that
    assert d.rank() >= rank_lower_bound(*d.params, c.n)


def test_fano_design_numbers():
    d = design_from_config(Configuration(FANO, 2))
    assert d.params == (3, 18, 6) and d.rank() == 4 and len(d.rows) == 42


def test_design_rejects_non_sg():
    with pytest.raises(ValueError):
        design_from_config(Configuration([(0, 0), (1, 0), (0, 1)]))


def test_ordinary_lines():
    assert len(ordinary_lines(GRID3)) == 12
    assert ordinary_lines([(0, 0), (1, 1), (2, 2)]) == []


def test_rank_lower_bound_examples():
    assert rank_lower_bound(3, 5, 0, 10) == 10
    assert rank_lower_bound(1, 4, 0, 6) == 6
    assert rank_lower_bound(3, 9, 6, 4) == 0
    assert rank_lower_bound(3, 9, 6, 4, clamp=False) == 4 - 16
    with pytest.raises(ValueError):
        rank_lower_bound(3, 0, 1, 4)


def test_exact_rank():
    assert exact_rank([[1, 0], [0, 1]]) == 2
    assert exact_rank([[1] * 4] * 4) == 1
    assert exact_rank([[1, 1], [1, 3]], p=2) == 1
    assert exact_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_diag_rank_bound_examples():
    j = [[2 if i == k else 1 for k in range(3)] for i in range(3)]
    assert diag_rank_bound(j, 2, 1, verify=True) == Fraction(12, 7)
    assert diag_rank_bound([[2, 1j], [-1j, 2]], 2, 1) == Fraction(4, 3)
    neg = [[-x for x in row] for row in j]
    assert diag_rank_bound(neg, 2, 1) == Fraction(12, 7)
    with pytest.raises(ValueError):
        diag_rank_bound([[2, 0], [0, -2]], 2, 0)     # mixed signs
    with pytest.raises(ValueError):
        diag_rank_bound(j, 1, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(2, 5), st.data())
def test_diag_rank_bound_never_exceeds_rank(n, big, data):
    off = [[data.draw(st.integers(-1, 1)) for _ in range(n)] for _ in range(n)]
    m = [[big if i == k else off[min(i, k)][max(i, k)] for k in range(n)] for i in range(n)]
    assert exact_rank(m) >= diag_rank_bound(m, big, 1, verify=True)
