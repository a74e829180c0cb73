"""Reed-Muller local correction, r-matchings and LCC matrices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .field import FieldSpec, check_cap, point_array
from .kakeya import projective_directions
from .linalg import rank_gf, solve_gf
from .poly import MultiPoly, monomials, evaluation_matrix

__all__ = [
    "RMCode",
    "LCCList",
    "Matching",
    "MatchingError",
    "encode",
    "local_correct",
    "correct_along",
    "decode_batch",
    "single_error_success",
    "rm_lcc_list",
    "spans",
    "build_matchings",
    "lcc_matrix",
    "katz_trevisan_probe",
]


@dataclass(frozen=True)
class RMCode:
    """Evaluations of degree <= e polynomials on F_q^m in lexicographic order."""

    spec: FieldSpec
    m: int
    e: int | None = None

    def __post_init__(self) -> None:
        e = self.spec.q - 2 if self.e is None else self.e
        if not 0 <= e <= self.spec.q - 2:
            raise ValueError("degree bound must satisfy 0 <= e <= q - 2")
        object.__setattr__(self, "e", e)
        check_cap(self.spec.q**self.m, None, "Reed-Muller length")

    @classmethod
    def robust(cls, spec: FieldSpec, m: int) -> RMCode:
        return cls(spec, m, spec.q // 10)

    @property
    def length(self) -> int:
        return self.spec.q**self.m

    @property
    def dimension(self) -> int:
        return math.comb(self.m + self.e, self.m)

    @cached_property
    def points(self) -> np.ndarray:
        return point_array(self.spec, self.m)

    def tau(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.points[i])

    def index_of(self, pt: Sequence[int]) -> int:
        idx = 0
        for c in pt:
            idx = idx * self.spec.q + int(c)
        return idx

    @cached_property
    def directions(self) -> list[tuple[int, ...]]:
        if self.spec.m != 1:
            return [d for d in itertools.product(range(self.spec.q), repeat=self.m)
                    if any(d) and self._is_canonical(d)]
        return projective_directions(self.spec.q, self.m)

    def _is_canonical(self, d) -> bool:
        lead = next(c for c in d if c)
        return lead == 1

    @cached_property
    def line_table(self) -> np.ndarray:
        """``T[i, l, t-1]`` = index of tau(i) + t d_l for t = 1..q-1."""
        s = self.spec
        dirs = np.array(self.directions, dtype=np.int64)
        ts = np.arange(1, s.q, dtype=np.int64)
        step = s.vmul(ts[None, :, None], dirs[:, None, :])          # L x (q-1) x m
        pts = s.vadd(self.points[:, None, None, :], step[None])     # N x L x (q-1) x m
        idx = np.zeros(pts.shape[:3], dtype=np.int64)
        for j in range(self.m):
            idx = idx * s.q + pts[..., j]
        return idx

    @cached_property
    def weights(self) -> np.ndarray:
        """Lagrange weights recovering the value at t = 0 from t = 1..q-1."""
        s = self.spec
        nodes = list(range(1, s.q))
        out = []
        for t in nodes:
            w = 1
            for u in nodes:
                if u != t:
                    w = s.mul(w, s.div(s.neg(u), s.sub(t, u)))
            out.append(w)
        return np.array(out, dtype=np.int64)


def encode(code: RMCode, f: MultiPoly) -> np.ndarray:
    if f.spec != code.spec or f.n_vars != code.m:
        raise ValueError("polynomial does not match the code")
    if f.degree > code.e:
        raise ValueError(f"degree {f.degree} exceeds the bound {code.e}")
    return f.evaluate_many(code.points)


def correct_along(code: RMCode, word: Sequence[int], i: int, line: int) -> int:
    """Value at tau(i) read off the given line through it (position i is not queried)."""
    s = code.spec
    w = np.asarray(word, dtype=np.int64)
    vals = w[code.line_table[i, line]]
    acc = 0
    for a, b in zip(vals, code.weights):
        acc = s.add(acc, s.mul(int(a), int(b)))
    return acc


def local_correct(code: RMCode, word: Sequence[int], i: int, rng: np.random.Generator) -> int:
    line = int(rng.integers(len(code.directions)))
    return correct_along(code, word, i, line)


def decode_batch(code: RMCode, words: np.ndarray, positions: np.ndarray, lines: np.ndarray) -> np.ndarray:
    """Vectorised correct_along over rows of ``words``."""
    s = code.spec
    idx = code.line_table[positions, lines]                           # B x (q-1)
    vals = np.take_along_axis(np.asarray(words, dtype=np.int64), idx, axis=1)
    terms = s.vmul(vals, code.weights[None, :])
    out = np.zeros(len(terms), dtype=np.int64)
    for j in range(terms.shape[1]):
        out = s.vadd(out, terms[:, j])
    return out


def single_error_success(code: RMCode) -> tuple[int, int]:
    """(successes, attempts) over every position, line, error position and error value."""
    s = code.spec
    n, lines = code.length, len(code.directions)
    ok = total = 0
    # The decoder is linear, so the zero codeword is representative.
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for val in range(1, s.q):
                word = np.zeros((lines, n), dtype=np.int64)
                word[:, j] = val
                got = decode_batch(code, word, np.full(lines, i), np.arange(lines))
                ok += int(np.count_nonzero(got == 0))
                total += lines
    return ok, total


# -- general LCCs ---------------------------------------------------------------

class MatchingError(ValueError):
    """The greedy matching got stuck, so the list is not an (r, delta)-LCC."""

    def __init__(self, index: int, excluded: frozenset[int], found: int, needed: float):
        self.index, self.excluded = index, excluded
        super().__init__(f"index {index}: no spanning set avoiding {sorted(excluded)} "
                         f"after {found} of {needed:.3g} required")


@dataclass
class LCCList:
    vectors: list[tuple[int, ...]]
    spec: FieldSpec
    r: int
    delta: float

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.vectors, dtype=np.int64)

    def dim(self) -> int:
        return rank_gf(self.matrix, self.spec)


@dataclass
class Matching:
    families: list[list[tuple[int, ...]]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return min((len(f) for f in self.families), default=0)


def rm_lcc_list(code: RMCode) -> LCCList:
    """Evaluation functionals: v_j = (tau(j)^a) over monomials a of degree <= e."""
    mat = evaluation_matrix(code.points, code.m, code.e, code.spec, monomials(code.m, code.e))
    return LCCList([tuple(int(x) for x in row) for row in mat], code.spec, code.spec.q - 1,
                   delta=1.0 / (code.spec.q - 1))


def spans(v: LCCList, i: int, subset: Sequence[int]) -> bool:
    if not subset:
        return not any(v.vectors[i])
    sub = v.matrix[list(subset)]
    return rank_gf(sub, v.spec) == rank_gf(np.vstack([sub, v.matrix[i]]), v.spec)


def build_matchings(v: LCCList, indices: Sequence[int] | None = None, maximal: bool = True) -> Matching:
    """Greedy disjoint spanning sets of size <= r for each index (smallest index first)."""
    n, r = v.n, v.r
    need = v.delta / r * n
    out = Matching()
    for i in (range(n) if indices is None else indices):
        fam: list[tuple[int, ...]] = []
        covered: set[int] = set()
        while maximal or len(fam) < need:
            avail = [j for j in range(n) if j != i and j not in covered]
            found = None
            for size in range(1, r + 1):
                for combo in itertools.combinations(avail, size):
                    if spans(v, i, combo):
                        found = combo
                        break
                if found:
                    break
            if found is None:
                break
            fam.append(found)
            covered.update(found)
        if len(fam) < need:
            raise MatchingError(i, frozenset(covered), len(fam), need)
        out.families.append(fam)
    return out


@dataclass
class LCCMatrix:
    rows: np.ndarray
    k: int
    r: int
    blocks: list[range]


def lcc_matrix(v: LCCList, matching: Matching) -> LCCMatrix:
    """Rows annihilating the v_j: one per spanning set, support {i} plus the set."""
    s = v.spec
    k = matching.k
    b = v.matrix
    rows, blocks = [], []
    for i, fam in enumerate(matching.families):
        start = len(rows)
        for combo in fam[:k]:
            coeffs = solve_gf(b[list(combo)].T, b[i], s)
            if coeffs is None:
                raise ValueError(f"set {combo} does not span vector {i}")
            row = np.zeros(v.n, dtype=np.int64)
            row[i] = 1
            for j, c in zip(combo, coeffs):
                row[j] = s.neg(int(c))
            rows.append(row)
        blocks.append(range(start, len(rows)))
    a = np.array(rows, dtype=np.int64).reshape(-1, v.n)
    if a.size and np.any(_matmul(a, b, s)):
        raise AssertionError("LCC matrix does not annihilate the vectors")
    for i, blk in enumerate(blocks):
        sup = [set(np.nonzero(a[j])[0]) for j in blk]
        for x, y in itertools.combinations(sup, 2):
            if x & y - {i}:
                raise AssertionError("row supports in a block overlap away from i")
    if a.size and rank_gf(a, s) > v.n - v.dim():
        raise AssertionError("rank of the LCC matrix exceeds n - dim")
    return LCCMatrix(a, k, v.r, blocks)


def _matmul(a: np.ndarray, b: np.ndarray, s: FieldSpec) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = s.vadd(out, s.vmul(a[:, j][:, None], b[j][None, :]))
    return out


def katz_trevisan_probe(v: LCCList, trials: int, rng: np.random.Generator,
                        mu: float | None = None) -> dict:
    """Random coordinate subsets; report the smallest one that spans the whole list."""
    n, r = v.n, v.r
    formula = math.log(n) * n ** (-1 / r)
    p = min(1.0, formula) if mu is None else mu
    target = v.dim()
    best = None
    for _ in range(trials):
        t = np.nonzero(rng.random(n) < p)[0]
        if best is not None and len(t) >= len(best):
            continue
        if len(t) and rank_gf(v.matrix[t], v.spec) == target:
            best = [int(x) for x in t]
    return {
        "smallest_spanning_T_found": best,
        "size": None if best is None else len(best),
        "mu": p,
        "mu_formula": formula,
        "bound": n ** ((r - 1) / r) * math.log(n),
    }
