"""Matrix scaling: alternating normalisation, the l2 corollary and the convex potential."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

__all__ = [
    "ScalingError",
    "ScalingResult",
    "has_nonzero_diagonal",
    "sinkhorn_scale",
    "l2_scale",
    "potential_value",
    "potential_grad",
    "potential_feasibility",
    "default_target",
    "scale_by_potential",
]


class ScalingError(ValueError):
    pass


@dataclass
class ScalingResult:
    """``diag(rho) B diag(gamma)`` with the gauge fixed by rho[0] = 1."""

    rho: np.ndarray
    gamma: np.ndarray
    achieved_eps: float
    iterations: int
    converged: bool
    history: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)

    def __post_init__(self) -> None:
        if not (np.all(self.rho > 0) and np.all(self.gamma > 0)):
            raise ScalingError("scaling coefficients must be strictly positive")

    def apply(self, b) -> np.ndarray:
        return self.rho[:, None] * np.asarray(b) * self.gamma[None, :]

    def to_json(self) -> dict:
        return {
            "rho": self.rho.tolist(),
            "gamma": self.gamma.tolist(),
            "achieved_eps": float(self.achieved_eps),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


def _gauge(rho: np.ndarray, gamma: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    c = rho[0]
    return rho / c, gamma * c


def _check_matrix(b) -> tuple[np.ndarray, int]:
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.size == 0:
        raise ScalingError("expected a non-empty 2-d matrix")
    if np.any(b < 0) or not np.all(np.isfinite(b)):
        raise ScalingError("entries must be finite and nonnegative")
    m, n = b.shape
    if m % n:
        raise ScalingError(f"row count {m} is not a multiple of column count {n}")
    if np.any(b.sum(axis=1) == 0) or np.any(b.sum(axis=0) == 0):
        raise ScalingError("zero row or column")
    return b, m // n


def has_nonzero_diagonal(b) -> bool:
    """Can the nk rows be split into k blocks, each with a nonzero diagonal?

    Equivalent to a perfect matching of rows to k copies of each column.
    """
    b = np.asarray(b)
    m, n = b.shape
    k = m // n
    graph = csr_matrix(np.repeat(b != 0, k, axis=1).astype(np.int8))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def sinkhorn_scale(b, eps: float = 1e-6, max_iters: int = 1_000_000,
                   check_diagonal: bool = True, raise_on_failure: bool = False) -> ScalingResult:
    """Alternate row (to 1) and column (to k) normalisation of an nk x n matrix.

    ``achieved_eps`` is max |row sum - 1| after a column step (columns are
    then exact); it never increases from one sweep to the next.
    """
    b, k = _check_matrix(b)
    if check_diagonal and not has_nonzero_diagonal(b):
        raise ScalingError("matrix lacks the non-zero diagonal property")
    gamma = np.ones(b.shape[1])
    bt = b.T
    hist = []
    achieved = np.inf
    it = 0
    while it < max_iters:
        it += 1
        rho = 1.0 / (b @ gamma)
        gamma = k / (bt @ rho)
        rows = rho * (b @ gamma)
        cur = float(np.max(np.abs(rows - 1.0)))
        if cur > achieved * (1 + 1e-12) + 1e-15:
            raise AssertionError(f"achieved_eps increased at sweep {it}: {achieved} -> {cur}")
        achieved = cur
        hist.append(cur)
        if achieved <= eps:
            break
    converged = achieved <= eps
    if not converged and raise_on_failure:
        raise ScalingError(f"no convergence in {max_iters} sweeps (eps {achieved:.3g})")
    rho, gamma = _gauge(rho, gamma)
    return ScalingResult(rho, gamma, achieved, it, converged, np.array(hist))


def l2_scale(a, eps: float = 1e-6, **kwargs) -> ScalingResult:
    """Scale so each row has squared norm within 1 + eps and columns reach k - eps."""
    sq = np.abs(np.asarray(a)) ** 2
    res = sinkhorn_scale(sq, eps, **kwargs)
    out = ScalingResult(np.sqrt(res.rho), np.sqrt(res.gamma), res.achieved_eps,
                        res.iterations, res.converged, res.history)
    if out.converged:
        norms = np.sqrt((np.abs(out.apply(a)) ** 2).sum(axis=1))
        if np.any(norms > np.sqrt(1 + eps) + 1e-12):
            raise AssertionError("a scaled row exceeds the l2 target")
    return out


# -- convex potential -----------------------------------------------------------

def _support(b: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows, cols = np.nonzero(b)
    return rows, cols, b[rows, cols]


def default_target(b) -> np.ndarray:
    """Row targets 1 and column targets k, normalised to total mass 1."""
    m, n = np.shape(b)
    k = m // n
    return np.concatenate([np.ones(m), np.full(n, float(k))]) / m


def _logits(b: np.ndarray, x: np.ndarray):
    m = b.shape[0]
    rows, cols, vals = _support(b)
    z = np.log(vals) + x[rows] + x[m + cols]
    top = z.max()
    w = np.exp(z - top)
    return rows, cols, w, top


def potential_value(b, v, x) -> float:
    """f(x) = ln sum_s B_s exp(x . e_s) - x . v."""
    b, x, v = np.asarray(b, float), np.asarray(x, float), np.asarray(v, float)
    _, _, w, top = _logits(b, x)
    return float(top + np.log(w.sum()) - x @ v)


def potential_grad(b, v, x) -> np.ndarray:
    b, x, v = np.asarray(b, float), np.asarray(x, float), np.asarray(v, float)
    m, n = b.shape
    rows, cols, w, _ = _logits(b, x)
    p = w / w.sum()
    g = np.concatenate([np.bincount(rows, p, minlength=m), np.bincount(cols, p, minlength=n)])
    return g - v


def potential_feasibility(b, v) -> float:
    """Largest t with v = sum lambda_s e_s, sum lambda = 1 and every lambda_s >= t.

    v lies in the relative interior of the hull of the support vectors iff t > 0.
    """
    b = np.asarray(b, float)
    m, n = b.shape
    rows, cols, _ = _support(b)
    s = len(rows)
    a_eq = np.zeros((m + n + 1, s + 1))
    a_eq[rows, np.arange(s)] = 1
    a_eq[m + cols, np.arange(s)] = 1
    a_eq[m + n, :s] = 1
    b_eq = np.concatenate([np.asarray(v, float), [1.0]])
    a_ub = np.zeros((s, s + 1))
    a_ub[np.arange(s), np.arange(s)] = -1
    a_ub[:, s] = 1
    c = np.zeros(s + 1)
    c[s] = -1
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(s), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * s + [(None, 1)], method="highs")
    if res.status != 0:
        return -np.inf
    return float(res.x[s])


def scale_by_potential(b, v=None, step: float = 0.5, tol: float = 1e-10,
                       max_iters: int = 200_000, check_feasible: bool = True) -> ScalingResult:
    """Gradient descent on the potential; the optimum induces the scaling.

    With P_s = B_s exp(x . e_s) / Z the marginals of P equal v at a stationary
    point, so rho_i = M exp(x_i) / Z and gamma_j = exp(x_{m+j}) give row sums
    M v_i (M = row count) and column sums M v_{m+j}.
    """
    b = np.asarray(b, float)
    if b.ndim != 2 or np.any(b < 0):
        raise ScalingError("expected a nonnegative matrix")
    m, n = b.shape
    v = default_target(b) if v is None else np.asarray(v, float)
    if v.shape != (m + n,):
        raise ScalingError(f"target must have length {m + n}")
    if abs(v[:m].sum() - 1) > 1e-12 or abs(v[m:].sum() - 1) > 1e-12:
        raise ScalingError("row and column targets must each sum to 1")
    if check_feasible and potential_feasibility(b, v) <= 1e-12:
        raise ScalingError("target is not inside the hull of the support vectors")
    x = np.zeros(m + n)
    hist = []
    g = potential_grad(b, v, x)
    it = 0
    while it < max_iters:
        gnorm = float(np.linalg.norm(g))
        hist.append(gnorm)
        if not np.isfinite(gnorm):
            raise ScalingError("gradient descent diverged")
        if gnorm <= tol:
            break
        x = x - step * g
        x -= x.mean()
        g = potential_grad(b, v, x)
        it += 1
    _, _, w, top = _logits(b, x)
    # Z = exp(top) * sum(w), folded into the exponent to avoid overflow
    rho = m * np.exp(x[:m] - top - np.log(w.sum()))
    rho, gamma = _gauge(rho, np.exp(x[m:]))
    scaled = rho[:, None] * b * gamma[None, :]
    achieved = float(max(np.max(np.abs(scaled.sum(axis=1) - m * v[:m])),
                         np.max(np.abs(scaled.sum(axis=0) - m * v[m:]))))
    return ScalingResult(rho, gamma, achieved, it, hist[-1] <= tol, np.array(hist))
