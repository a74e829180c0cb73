from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from incilab.kakeya import (KakeyaWitness, build_kakeya, canonical_direction, certify_lower_bound,
                            find_kakeya_witness, kakeya_core, nikodym_from_kakeya, projective_directions,
                            verify_kakeya, verify_nikodym)


def test_core_sizes():
    assert len(kakeya_core(5, 2)) == 15
    assert len(kakeya_core(3, 2)) == 6


def test_build_small_examples():
    w = build_kakeya(5, 2)
    assert len(w.points) == 17
    assert verify_kakeya(w)
    assert len(projective_directions(5, 2)) == 6


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("n", [2, 3])
def test_size_bound(q, n):
    w = build_kakeya(q, n)
    assert verify_kakeya(w)
    assert len(w.points) <= Fraction(q**n, 2 ** (n - 1)) + 2 * q ** (n - 1)


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_planar_size_closed_form(q):
    # q(q+1)/2 core points plus (q-1)/2 new points on the extra horizontal line
    assert len(build_kakeya(q, 2).points) == (q * q + 2 * q - 1) // 2


@pytest.mark.parametrize("q", [3, 5, 7])
def test_core_size_in_three_dimensions(q):
    # each of the q slices is a product of two shifted copies of the squares
    assert len(kakeya_core(q, 3)) == q * ((q + 1) // 2) ** 2


def test_even_q_rejected():
    with pytest.raises(ValueError):
        build_kakeya(4, 2)


def test_whole_space_and_single_line():
    q, n = 5, 2
    space = list(itertools.product(range(q), repeat=n))
    assert find_kakeya_witness(space, q, n) is not None
    line = [(t, 0) for t in range(q)]
    assert find_kakeya_witness(line, q, n) is None


def test_canonical_direction():
    assert canonical_direction((2, 4), 5) == (1, 2)
    assert canonical_direction((0, 3), 5) == (0, 1)


def test_nikodym():
    nik = nikodym_from_kakeya(build_kakeya(5, 2))
    assert verify_nikodym(nik)
    assert len(nik.points) <= 5 * 17


def test_rank_certificates():
    cert = certify_lower_bound(build_kakeya(3, 2).points, 3, 2)
    assert cert.rank == 6 and cert.bound_holds
    cert = certify_lower_bound(build_kakeya(5, 2).points, 5, 2)
    assert cert.rank == math.comb(6, 2) == 15
    assert cert.volume_bound == 12.5
    full = certify_lower_bound(itertools.product(range(5), repeat=2), 5, 2)
    assert full.rank == 15
    with pytest.raises(ValueError):
        certify_lower_bound([(0, 0), (1, 1)], 5, 2)


def test_witness_json_round_trip():
    w = build_kakeya(7, 2)
    w2 = KakeyaWitness.from_json(w.to_json())
    assert w2.points == w.points and w2.base_of == w.base_of
    assert verify_kakeya(w2)
