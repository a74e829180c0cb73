from __future__ import annotations

import numpy as np
import pytest

from incilab.sgdesign import ScalingResult, l2_scale, scale_by_potential, sinkhorn_scale
from incilab.scaling import (ScalingError, default_target, has_nonzero_diagonal, potential_feasibility,
                             potential_grad, potential_value)


def test_all_ones_square():
    r = sinkhorn_scale(np.ones((2, 2)))
    assert r.iterations == 1 and r.achieved_eps == 0
    assert np.allclose(r.apply(np.ones((2, 2))), 0.5)
    assert r.rho[0] == 1


def test_upper_triangular_converges_slowly():
    b = np.array([[1.0, 1.0], [0.0, 1.0]])
    r = sinkhorn_scale(b, eps=1e-3)
    assert r.converged and r.achieved_eps <= 1e-3
    assert np.all(np.diff(r.history) <= 1e-15)
    s = r.apply(b)
    assert np.allclose(s.sum(axis=0), 1)
    assert np.all(np.abs(s.sum(axis=1) - 1) <= 1e-3)
    # the limit is the identity; the off-diagonal mass only decays like 1/t
    assert s[0, 1] > 1e-5


def test_tall_block():
    b = np.ones((4, 2))
    r = sinkhorn_scale(b)
    s = r.apply(b)
    assert np.allclose(s.sum(axis=1), 1) and np.allclose(s.sum(axis=0), 2)


def test_diagonal_property():
    assert has_nonzero_diagonal(np.eye(3))
    assert not has_nonzero_diagonal(np.array([[1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
    with pytest.raises(ScalingError):
        sinkhorn_scale(np.array([[1.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(ScalingError):
        sinkhorn_scale(np.ones((3, 2)))
    r = sinkhorn_scale(np.array([[1.0, 1.0], [0.0, 1.0]]), max_iters=5)
    assert not r.converged
    with pytest.raises(ScalingError):
        sinkhorn_scale(np.array([[1.0, 1.0], [0.0, 1.0]]), max_iters=5, raise_on_failure=True)


def test_result_positivity():
    with pytest.raises(ScalingError):
        ScalingResult(np.array([1.0, 0.0]), np.array([1.0, 1.0]), 0.0, 1, True)


def test_l2_identity_and_random():
    r = l2_scale(np.eye(3))
    assert np.allclose(r.apply(np.eye(3)), np.eye(3))
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 3)) + 1j * rng.normal(size=(6, 3))
    r = l2_scale(a, 1e-8)
    s = np.abs(r.apply(a)) ** 2
    assert np.all(s.sum(axis=1) <= 1 + 1e-8 + 1e-12)
    assert np.allclose(s.sum(axis=0), 2)


def test_potential_agrees_with_sinkhorn():
    rng = np.random.default_rng(7)
    b = rng.random((6, 3)) + 0.05
    a = sinkhorn_scale(b, eps=1e-12)
    p = scale_by_potential(b)
    assert p.converged
    assert np.allclose(a.apply(b), p.apply(b), atol=1e-9)
    assert np.allclose(a.rho, p.rho, rtol=1e-8)


def test_potential_gradient_matches_finite_differences():
    rng = np.random.default_rng(8)
    b = rng.random((4, 2))
    v = default_target(b)
    x = rng.normal(size=6)
    g = potential_grad(b, v, x)
    h = 1e-6
    fd = np.array([(potential_value(b, v, x + h * e) - potential_value(b, v, x - h * e)) / (2 * h)
                   for e in np.eye(6)])
    assert np.allclose(g, fd, atol=1e-8)


def test_potential_infeasible_target():
    b = np.array([[1.0, 0.0], [1.0, 0.0]])
    v = np.array([0.5, 0.5, 0.5, 0.5])
    assert potential_feasibility(b, v) < 1e-12
    with pytest.raises(ScalingError):
        scale_by_potential(b, v)
    assert potential_feasibility(np.ones((2, 2)), v) == pytest.approx(0.25)
