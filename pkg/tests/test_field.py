from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from incilab import field as fld
from incilab.field import EnumerationCapError, FieldElement, FieldMismatchError, FieldSpec, get_field


def test_prime_field_basics():
    f = FieldSpec(7)
    assert f.q == 7
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    assert f.div(1, 3) == 5
    assert f.neg(0) == 0
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_f4_alpha_squared():
    f = get_field(4)
    alpha = f.code((0, 1))
    assert f.mul(alpha, alpha) == f.add(alpha, 1)
    assert f.rep(f.mul(alpha, alpha)) == (1, 1)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27, 25, 49])
def test_multiplicative_group_is_cyclic_of_right_order(q):
    f = get_field(q)
    orders = []
    for x in range(1, q):
        k, y = 1, x
        while y != 1:
            y, k = f.mul(y, x), k + 1
        orders.append(k)
    assert max(orders) == q - 1
    assert all((q - 1) % k == 0 for k in orders)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_vectorised_ops_match_scalar(q):
    f = get_field(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q))
    assert np.array_equal(f.vadd(a, b), np.vectorize(f.add)(a, b))
    assert np.array_equal(f.vmul(a, b), np.vectorize(f.mul)(a, b))
    assert np.array_equal(f.vsub(a, b), np.vectorize(f.sub)(a, b))
    nz = np.arange(1, q)
    assert np.array_equal(f.vmul(nz, f.vinv(nz)), np.ones(q - 1, dtype=np.int64))


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))          # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_json_round_trip():
    f = get_field(9)
    assert FieldSpec.from_json(f.to_json()) == f
    assert FieldSpec.from_json('{"p": 5}') == FieldSpec(5)


def test_field_elements_and_mismatch():
    f5, f7 = FieldSpec(5), FieldSpec(7)
    x = FieldElement(f5, 3)
    assert (x * x).code == 4
    assert (x + FieldElement(f5, 4)).code == 2
    assert fld.inv(x).code == 2
    with pytest.raises(FieldMismatchError):
        fld.add(x, FieldElement(f7, 1))


def test_enumeration_order_and_cap():
    f = FieldSpec(3)
    assert list(fld.points(f, 2))[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert np.array_equal(fld.point_array(f, 2)[3], [1, 0])
    assert [e.code for e in fld.enumerate_field(get_field(4))] == [0, 1, 2, 3]
    with pytest.raises(EnumerationCapError):
        list(fld.points(FieldSpec(5), 3, cap=100))


def test_is_square():
    f = FieldSpec(7)
    assert {x for x in range(7) if f.is_square(x)} == {0, 1, 2, 4}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
def test_field_axioms(q, data):
    f = get_field(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    if a:
        assert f.mul(a, f.inv(a)) == 1
    assert f.pow(a, q) == a
