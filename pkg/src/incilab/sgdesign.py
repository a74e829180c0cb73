"""Sylvester-Gallai configurations, triple systems, design matrices and rank bounds."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .field import FieldSpec, check_cap, is_prime
from .incidence import _lines_by_pairs
from .linalg import GaussianRational, nullspace_exact, nullspace_gf, rank_exact, rank_gf

__all__ = [
    "Configuration",
    "DesignMatrix",
    "SGResult",
    "check_sg",
    "special_lines",
    "ordinary_lines",
    "idempotent_latin_square",
    "triple_system",
    "design_from_config",
    "rank_lower_bound",
    "exact_rank",
    "diag_rank_bound",
]


@dataclass
class Configuration:
    """Vectors over F_p (linear dependence) or rational points (collinearity).

    ``p=None`` means rationals in affine mode; with a prime ``p`` the vectors
    are read projectively and must form a proper set.
    """

    vectors: list[tuple]
    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is None:
            self.vectors = [tuple(Fraction(c) for c in v) for v in self.vectors]
            if len(set(self.vectors)) != len(self.vectors):
                raise ValueError("repeated points")
        else:
            if not is_prime(self.p):
                raise ValueError("p must be prime")
            self.vectors = [tuple(int(c) % self.p for c in v) for v in self.vectors]
            seen = set()
            for v in self.vectors:
                if not any(v):
                    raise ValueError("zero vector in a proper configuration")
                lead = next(c for c in v if c)
                key = tuple(c * pow(lead, -1, self.p) % self.p for c in v)
                if key in seen:
                    raise ValueError("two vectors are scalar multiples")
                seen.add(key)
        if len({len(v) for v in self.vectors}) > 1:
            raise ValueError("mixed dimensions")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    def homogeneous(self) -> list[tuple]:
        """Rows of V: the vectors, or the points with a trailing 1 in affine mode."""
        if self.p is None:
            return [v + (Fraction(1),) for v in self.vectors]
        return list(self.vectors)

    def span_dim(self) -> int:
        rows = self.homogeneous()
        if self.p is None:
            return rank_exact(rows)
        return rank_gf(np.array(rows, dtype=np.int64), FieldSpec(self.p))

    def to_json(self) -> dict:
        out: dict = {"field": "Q" if self.p is None else self.p}
        out["vectors"] = [[str(c) for c in v] for v in self.vectors]
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> Configuration:
        if isinstance(data, str):
            data = json.loads(data)
        fld = data.get("field", "Q")
        p = None if fld in ("Q", "rationals", None) else int(fld)
        vecs = [tuple(Fraction(c) if p is None else int(c) for c in v) for v in data["vectors"]]
        return cls(vecs, p)


def special_lines(c: Configuration) -> list[frozenset[int]]:
    """Index sets of size >= 3 lying on a common line (or 2-dim span)."""
    if c.p is None:
        return sorted((frozenset(s) for s in _lines_by_pairs(c.vectors).values() if len(s) >= 3),
                      key=sorted)
    spec = FieldSpec(c.p)
    mat = np.array(c.vectors, dtype=np.int64)
    found: set[frozenset[int]] = set()
    for i, j in itertools.combinations(range(c.n), 2):
        basis = mat[[i, j]]
        members = [k for k in range(c.n)
                   if k in (i, j) or rank_gf(np.vstack([basis, mat[k]]), spec) == 2]
        if len(members) >= 3:
            found.add(frozenset(members))
    return sorted(found, key=sorted)


@dataclass
class SGResult:
    holds: bool
    counts: list[int]
    delta_achieved: Fraction
    failing: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_sg(c: Configuration, delta=1) -> SGResult:
    """For each i, the points on special lines through v_i (v_i included) must number >= delta n."""
    delta = Fraction(delta)
    lines = special_lines(c)
    counts = []
    for i in range(c.n):
        cover: set[int] = set()
        for ln in lines:
            if i in ln:
                cover |= ln
        counts.append(len(cover))
    need = delta * c.n
    failing = next((i for i, k in enumerate(counts) if k < need), None)
    achieved = Fraction(min(counts), c.n) if counts else Fraction(0)
    return SGResult(failing is None, counts, achieved, failing)


def ordinary_lines(points: Sequence[Sequence]) -> list:
    """Lines through exactly two of the (rational) points."""
    pts = [tuple(Fraction(x) for x in pt) for pt in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    lines = _lines_by_pairs(pts)
    out = [ln for ln, s in lines.items() if len(s) == 2]
    if len(lines) > 1 and not out:
        raise AssertionError("non-collinear rational points with no ordinary line")
    return out


# -- triple systems -------------------------------------------------------------

@lru_cache(maxsize=None)
def idempotent_latin_square(r: int) -> tuple[tuple[int, ...], ...]:
    """An r x r Latin square with L[a][a] = a (exists for every r != 2)."""
    if r < 3:
        raise ValueError("need r >= 3")
    if r % 2 == 1:
        half = (r + 1) // 2
        return tuple(tuple((a + b) * half % r for b in range(r)) for a in range(r))
    # even order: fill row by row with an assignment problem, randomised restarts
    rng = np.random.default_rng(r)
    for _ in range(200):
        rows: list[list[int]] = []
        used_in_col = [set() for _ in range(r)]
        ok = True
        for a in range(r):
            cost = np.ones((r, r))
            for b in range(r):
                for s in range(r):
                    if b == a:
                        allowed = s == a
                    else:
                        allowed = s not in (a, b) and s not in used_in_col[b]
                    if allowed:
                        cost[b, s] = rng.random() * 1e-3
            cols, syms = linear_sum_assignment(cost)
            if cost[cols, syms].max() >= 1:
                ok = False
                break
            row = [0] * r
            for b, s in zip(cols, syms):
                row[b] = int(s)
                used_in_col[b].add(int(s))
            rows.append(row)
        if ok:
            return tuple(tuple(row) for row in rows)
    raise RuntimeError(f"no idempotent Latin square of order {r} found")


def triple_system(r: int, check: bool = True) -> list[tuple[int, int, int]]:
    """Ordered triples (a, b, L[a][b]) for a != b, with L idempotent Latin.

    There are r^2 - r triples, every element lies in exactly 3(r - 1) of them
    and every pair in at most 6.
    """
    sq = idempotent_latin_square(r)
    out = [(a, b, sq[a][b]) for a in range(r) for b in range(r) if a != b]
    if check:
        occ = [0] * r
        pair: dict[tuple[int, int], int] = {}
        for t in out:
            if len(set(t)) != 3:
                raise AssertionError(f"degenerate triple {t}")
            for x in t:
                occ[x] += 1
            for x, y in itertools.combinations(sorted(t), 2):
                pair[(x, y)] = pair.get((x, y), 0) + 1
        if len(out) != r * r - r or any(o != 3 * (r - 1) for o in occ):
            raise AssertionError("element occurrence counts are off")
        if max(pair.values()) > 6:
            raise AssertionError("a pair lies in more than 6 triples")
    return out


# -- design matrices ------------------------------------------------------------

@dataclass
class DesignMatrix:
    rows: list[dict[int, object]]
    n: int
    p: int | None
    params: tuple[int, int, int] = (0, 0, 0)

    def dense(self) -> list[list]:
        zero = 0 if self.p is not None else Fraction(0)
        return [[r.get(j, zero) for j in range(self.n)] for r in self.rows]

    def measure(self) -> tuple[int, int, int]:
        q = max((len(r) for r in self.rows), default=0)
        cols = [set() for _ in range(self.n)]
        for i, r in enumerate(self.rows):
            for j in r:
                cols[j].add(i)
        k = min((len(c) for c in cols), default=0)
        t = max((len(cols[a] & cols[b]) for a, b in itertools.combinations(range(self.n), 2)), default=0)
        return q, k, t

    def rank(self) -> int:
        return exact_rank(self.dense(), self.p)


def _dependency(vs: list[tuple], p: int | None) -> list:
    cols = [list(x) for x in zip(*vs)]          # d x 3
    if p is None:
        null = nullspace_exact(cols, 3)
    else:
        null = [list(map(int, v)) for v in nullspace_gf(np.array(cols, dtype=np.int64), FieldSpec(p))]
    if len(null) != 1:
        raise AssertionError("expected a one-dimensional dependency")
    return null[0]


def design_from_config(c: Configuration, delta=1) -> DesignMatrix:
    """Rows with three nonzeros, one per triple of the triple system on each special line."""
    sg = check_sg(c, delta)
    if not sg:
        raise ValueError(f"not a {delta}-SG configuration (index {sg.failing})")
    v = c.homogeneous()
    rows: list[dict[int, object]] = []
    for line in special_lines(c):
        idx = sorted(line)
        for a, b, d in triple_system(len(idx)):
            trio = [idx[a], idx[b], idx[d]]
            coeffs = _dependency([v[j] for j in trio], c.p)
            if any(x == 0 for x in coeffs):
                raise AssertionError("dependency with a zero coefficient")
            rows.append(dict(zip(trio, coeffs)))
    dm = DesignMatrix(rows, c.n, c.p)
    # A V = 0, exactly
    for r in rows:
        for coord in range(len(v[0])):
            s = sum(val * v[j][coord] for j, val in r.items())
            if (s % c.p if c.p is not None else s) != 0:
                raise AssertionError("A V != 0")
    dm.params = dm.measure()
    return dm


def rank_lower_bound(q: int, k: int, t: int, n: int, clamp: bool = True) -> Fraction:
    """n - (q t n / 2k)^2."""
    if k <= 0:
        raise ValueError("k must be positive")
    val = n - Fraction(q * t * n, 2 * k) ** 2
    return max(val, Fraction(0)) if clamp else val


def exact_rank(m: Sequence[Sequence], p: int | None = None, cap: int = 10**6) -> int:
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    check_cap(len(rows) * len(rows[0]), cap, "exact rank")
    if p is None:
        return rank_exact(rows)
    return rank_gf(np.array(rows, dtype=np.int64) % p, FieldSpec(p))


def diag_rank_bound(m: Sequence[Sequence], big_l, small_l, verify: bool = False) -> Fraction:
    """n / (1 + n (l/L)^2) for Hermitian M with |off-diagonal| <= l.

    The diagonal must be uniformly signed with every entry of absolute value
    at least L (negating M leaves the rank alone). With ``verify`` the exact
    rank is computed and checked against the ceiling of the bound.
    """
    big_l, small_l = Fraction(big_l), Fraction(small_l)
    if not big_l > small_l >= 0:
        raise ValueError("need L > l >= 0")
    n = len(m)
    ex = [[GaussianRational.of(x) if isinstance(x, (complex, GaussianRational)) else Fraction(x)
           for x in row] for row in m]
    diag = []
    for i in range(n):
        if len(ex[i]) != n:
            raise ValueError("matrix must be square")
        d = ex[i][i]
        if isinstance(d, GaussianRational):
            if d.im:
                raise ValueError("Hermitian diagonal must be real")
            d = d.re
        diag.append(d)
        for j in range(i + 1, n):
            a, b = ex[i][j], ex[j][i]
            conj = b.conjugate() if isinstance(b, GaussianRational) else b
            if GaussianRational.of(a) != GaussianRational.of(conj):
                raise ValueError("matrix is not Hermitian")
            mag2 = a.norm() if isinstance(a, GaussianRational) else a * a
            if mag2 > small_l * small_l:
                raise ValueError(f"off-diagonal entry ({i},{j}) exceeds l")
    if not (all(d >= big_l for d in diag) or all(d <= -big_l for d in diag)):
        raise ValueError("diagonal entries must all be >= L (or all <= -L)")
    bound = Fraction(n) / (1 + n * (small_l / big_l) ** 2)
    if verify:
        rk = rank_exact(ex)
        if rk < math.ceil(bound):
            raise AssertionError(f"rank {rk} is below the bound {bound}")
    return bound


from .scaling import ScalingResult, l2_scale, scale_by_potential, sinkhorn_scale  # noqa: E402

__all__ += ["ScalingResult", "sinkhorn_scale", "l2_scale", "scale_by_potential"]
