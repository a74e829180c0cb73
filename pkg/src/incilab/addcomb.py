"""Sumsets, energy, growth in F_p, a constructive Balog-Szemeredi-Gowers step,
Ruzsa covering and sum-product statistics."""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .field import check_cap, is_prime

__all__ = [
    "Group",
    "AbelianSet",
    "PairGraph",
    "BoundViolation",
    "sumset",
    "difference",
    "productset",
    "dilate",
    "kfold",
    "sum_histogram",
    "quadruple_count",
    "energy",
    "find_good_lambda",
    "stab",
    "stab_closure_report",
    "growth_set",
    "ruzsa_triangle",
    "bsg_extract",
    "ruzsa_cover",
    "sum_product_stats",
    "subsets_of_size",
    "batch_good_lambda",
    "batch_growth",
]

PRODUCT_CAP = 1000


class BoundViolation(AssertionError):
    """A stated inequality failed on a concrete instance."""


@dataclass(frozen=True)
class Group:
    """``kind`` is one of "Z", "F_p", "F_p^d"; Z_3^n is F_p^d with p = 3."""

    kind: str
    p: int | None = None
    d: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "F_p", "F_p^d"):
            raise ValueError(f"unknown group {self.kind!r}")
        if self.kind != "Z" and not (self.p and is_prime(self.p)):
            raise ValueError("finite groups need a prime p")
        if self.kind == "F_p^d" and not (self.d and self.d >= 1):
            raise ValueError("vector groups need a dimension")

    @classmethod
    def integers(cls) -> Group:
        return cls("Z")

    @classmethod
    def prime_field(cls, p: int) -> Group:
        return cls("F_p", p)

    @classmethod
    def vectors(cls, p: int, d: int) -> Group:
        return cls("F_p^d", p, d)

    @property
    def is_ring(self) -> bool:
        return self.kind in ("Z", "F_p")

    def normalize(self, x):
        if self.kind == "Z":
            return int(x)
        if self.kind == "F_p":
            return int(x) % self.p
        v = tuple(int(c) % self.p for c in x)
        if len(v) != self.d:
            raise ValueError(f"expected a vector of length {self.d}")
        return v

    def add(self, x, y):
        if self.kind == "Z":
            return x + y
        if self.kind == "F_p":
            return (x + y) % self.p
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        if self.kind == "Z":
            return -x
        if self.kind == "F_p":
            return -x % self.p
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        if self.kind == "Z":
            return x * y
        if self.kind == "F_p":
            return x * y % self.p
        raise TypeError("vector groups have no product")

    def scale(self, lam, x):
        if self.kind == "F_p^d":
            return tuple(lam * a % self.p for a in x)
        return self.mul(self.normalize(lam), x)

    @property
    def zero(self):
        return (0,) * self.d if self.kind == "F_p^d" else 0

    def tag(self) -> dict:
        out: dict = {"group": self.kind}
        if self.p is not None:
            out["p"] = self.p
        if self.d is not None:
            out["d"] = self.d
        return out


@dataclass(frozen=True)
class AbelianSet:
    group: Group
    elements: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted({self.group.normalize(x) for x in self.elements})))

    @classmethod
    def of(cls, group: Group, items: Iterable) -> AbelianSet:
        return cls(group, tuple(items))

    @classmethod
    def ints(cls, items: Iterable[int]) -> AbelianSet:
        return cls(Group.integers(), tuple(items))

    @classmethod
    def mod(cls, p: int, items: Iterable[int]) -> AbelianSet:
        return cls(Group.prime_field(p), tuple(items))

    @classmethod
    def vecs(cls, p: int, d: int, items: Iterable[Sequence[int]]) -> AbelianSet:
        return cls(Group.vectors(p, d), tuple(tuple(x) for x in items))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return self.group.normalize(x) in set(self.elements)

    def as_set(self) -> set:
        return set(self.elements)

    def __neg__(self) -> AbelianSet:
        return AbelianSet(self.group, tuple(self.group.neg(x) for x in self.elements))

    def __add__(self, other: AbelianSet) -> AbelianSet:
        return sumset(self, other)

    def __sub__(self, other: AbelianSet) -> AbelianSet:
        return difference(self, other)

    def to_json(self) -> dict:
        out = self.group.tag()
        out["elements"] = [list(x) if isinstance(x, tuple) else x for x in self.elements]
        return out

    @classmethod
    def from_json(cls, data: dict | list | str) -> AbelianSet:
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls.ints(data)
        kind = data.get("group", "Z")
        if kind == "Z_3^n":
            kind, data = "F_p^d", {**data, "p": 3, "d": data.get("n", data.get("d"))}
        g = Group(kind, data.get("p"), data.get("d"))
        return cls(g, tuple(tuple(x) if isinstance(x, list) else x for x in data["elements"]))


@dataclass
class PairGraph:
    left: AbelianSet
    right: AbelianSet
    edges: set[tuple[int, int]] = field(default_factory=set)

    def __post_init__(self) -> None:
        nl, nr = len(self.left), len(self.right)
        self.edges = {(int(i), int(j)) for i, j in self.edges}
        if any(not (0 <= i < nl and 0 <= j < nr) for i, j in self.edges):
            raise ValueError("edge index out of range")

    @classmethod
    def complete(cls, a: AbelianSet, b: AbelianSet) -> PairGraph:
        return cls(a, b, set(itertools.product(range(len(a)), range(len(b)))))

    def adjacency(self) -> np.ndarray:
        m = np.zeros((len(self.left), len(self.right)), dtype=np.int64)
        for i, j in self.edges:
            m[i, j] = 1
        return m


def _same(a: AbelianSet, b: AbelianSet) -> Group:
    if a.group != b.group:
        raise ValueError(f"group mismatch: {a.group} vs {b.group}")
    return a.group


def sumset(a: AbelianSet, b: AbelianSet) -> AbelianSet:
    g = _same(a, b)
    return AbelianSet(g, tuple(g.add(x, y) for x in a for y in b))


def difference(a: AbelianSet, b: AbelianSet) -> AbelianSet:
    g = _same(a, b)
    return AbelianSet(g, tuple(g.add(x, g.neg(y)) for x in a for y in b))


def productset(a: AbelianSet, b: AbelianSet) -> AbelianSet:
    g = _same(a, b)
    if not g.is_ring:
        raise TypeError("product sets need a ring")
    if g.kind == "Z" and max(len(a), len(b)) > PRODUCT_CAP:
        raise ValueError(f"integer product sets are capped at |A| <= {PRODUCT_CAP}")
    return AbelianSet(g, tuple(g.mul(x, y) for x in a for y in b))


def dilate(lam, a: AbelianSet) -> AbelianSet:
    return AbelianSet(a.group, tuple(a.group.scale(lam, x) for x in a))


def kfold(a: AbelianSet, k: int) -> AbelianSet:
    """k*A = A + ... + A."""
    if k < 1:
        raise ValueError("k must be positive")
    out = a
    for _ in range(k - 1):
        out = sumset(out, a)
    return out


def sum_histogram(a: AbelianSet, b: AbelianSet) -> Counter:
    g = _same(a, b)
    if not len(a) or not len(b):
        raise ValueError("sets must be nonempty")
    return Counter(g.add(x, y) for x in a for y in b)


def quadruple_count(a: AbelianSet, b: AbelianSet) -> int:
    """#{(a, b, a', b') : a + b = a' + b'} = sum of squared sum multiplicities."""
    return sum(c * c for c in sum_histogram(a, b).values())


def energy(a: AbelianSet, b: AbelianSet) -> Fraction:
    return Fraction(len(a) ** 2 * len(b) ** 2, quadruple_count(a, b))


def _check_fp(a: AbelianSet) -> int:
    if a.group.kind != "F_p":
        raise TypeError("expected a subset of F_p")
    if not len(a):
        raise ValueError("set must be nonempty")
    return a.group.p


def find_good_lambda(a: AbelianSet) -> tuple[int, int]:
    """The lambda in F_p^* maximising |A + lambda A| (smallest such lambda)."""
    p = _check_fp(a)
    best = (0, -1)
    for lam in range(1, p):
        size = len(sumset(a, dilate(lam, a)))
        if size > best[1]:
            best = (lam, size)
    if 2 * best[1] < min(len(a) ** 2, p):
        raise BoundViolation(f"|A + lambda A| = {best[1]} < min(|A|^2, p)/2")
    return best


def stab(a: AbelianSet, k) -> AbelianSet:
    p = _check_fp(a)
    k = Fraction(k)
    lams = [lam for lam in range(1, p) if len(sumset(a, dilate(lam, a))) <= k * len(a)]
    return AbelianSet.mod(p, lams)


def stab_closure_report(a: AbelianSet, k) -> list[dict]:
    """For each lambda in Stab_K, the growth ratios of -lambda and 1/lambda."""
    p = _check_fp(a)
    out = []
    for lam in stab(a, k):
        ratio = {}
        for name, mu in (("neg", -lam % p), ("inv", pow(lam, -1, p))):
            ratio[name] = Fraction(len(sumset(a, dilate(mu, a))), len(a))
        out.append({"lambda": lam, "neg_ratio": ratio["neg"], "inv_ratio": ratio["inv"]})
    return out


def growth_set(a: AbelianSet) -> AbelianSet:
    """3 A^2 - 3 A^2 with A^2 = A.A."""
    p = _check_fp(a)
    sq = productset(a, a)
    three = kfold(sq, 3)
    out = difference(three, three)
    if 2 * len(out) < min(len(a) ** 2, p):
        raise BoundViolation(f"|3A^2 - 3A^2| = {len(out)} < min(|A|^2, p)/2")
    return out


def ruzsa_triangle(a: AbelianSet, b: AbelianSet, c: AbelianSet) -> tuple[int, int]:
    """(|A||B - C|, |A - B||A - C|); the first never exceeds the second."""
    return len(a) * len(difference(b, c)), len(difference(a, b)) * len(difference(a, c))


# -- Balog-Szemeredi-Gowers -----------------------------------------------------

@dataclass
class BSGReport:
    N: int
    K: Fraction
    popular: int
    h_edges: int
    alpha: float
    pivot: int | None
    v_prime: int
    size_a: int
    size_b: int
    size_diff: int
    size_sum: int
    c_size: float | None
    c_sum: float | None
    note: str = ""

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bsg_extract(a: AbelianSet, b: AbelianSet, graph: PairGraph, k, eps: float = 0.25,
                u_factor: float | None = None) -> tuple[AbelianSet, AbelianSet, BSGReport]:
    """Popular differences, the graph H, the 2-path choice of V' and the 3-path pruning.

    ``u_factor`` sets the neighbour threshold for U' as a multiple of |V'|; it
    must exceed 2 eps for paths of length three to exist, default 3 eps.
    """
    g = _same(a, b)
    n = len(a)
    if len(b) != n:
        raise ValueError("BSG needs |A| = |B|")
    if not graph.edges:
        raise ValueError("the graph has no edges")
    k = Fraction(k)
    u_factor = 3 * eps if u_factor is None else u_factor
    ea, eb = a.elements, b.elements
    label = {(i, j): g.add(ea[i], g.neg(eb[j])) for i, j in graph.edges}
    counts = Counter(label.values())
    threshold = Fraction(n) / (2 * k)
    popular = {x for x, c in counts.items() if c >= threshold}
    empty = AbelianSet(g, ())

    def report(pivot, vp, sa, sb, note=""):
        diff = difference(sa, sb) if len(sa) and len(sb) else empty
        tot = sumset(sa, sb) if len(sa) and len(sb) else empty
        logk = math.log(k) if k > 1 else None
        c_size = (math.log(n / min(len(sa), len(sb))) / logk
                  if logk and len(sa) and len(sb) else None)
        c_sum = (math.log(max(len(tot), 1) / n) / logk if logk and len(tot) else None)
        return BSGReport(n, k, len(popular), len(h_edges), alpha, pivot, vp, len(sa), len(sb),
                         len(diff), len(tot), c_size, c_sum, note)

    h_edges = {e for e, x in label.items() if x in popular}
    alpha = len(h_edges) / n**2
    if not popular:
        return empty, empty, report(None, 0, empty, empty, "empty popular set")
    h = np.zeros((n, n), dtype=np.int64)
    for i, j in h_edges:
        h[i, j] = 1
    # drop low-degree vertices
    keep_a = h.sum(axis=1) >= alpha / 2 * n
    keep_b = h.sum(axis=0) >= alpha / 2 * n
    h = h * keep_a[:, None] * keep_b[None, :]
    common = h @ h.T
    bad = (common <= eps * alpha**2 / 2 * n).astype(np.int64)
    nbrs = h.T                                    # row u: indicator of Gamma(u) in A
    deg = nbrs.sum(axis=1)
    s_u = ((nbrs @ bad) * nbrs).sum(axis=1)
    score = eps * deg.astype(float) ** 2 - s_u
    score[deg == 0] = -np.inf
    if not np.isfinite(score).any():
        return empty, empty, report(None, 0, empty, empty, "no vertex survives pruning")
    u = int(np.argmax(score))
    vp = nbrs[u].astype(bool)
    size_vp = int(vp.sum())
    bad_in_vp = (bad[:, vp]).sum(axis=1)
    vpp = vp & (bad_in_vp <= 2 * eps * size_vp)
    hits = h[vpp].sum(axis=0)
    up = hits > u_factor * size_vp
    a_out = AbelianSet(g, tuple(ea[i] for i in np.nonzero(vpp)[0]))
    b_out = AbelianSet(g, tuple(eb[j] for j in np.nonzero(up)[0]))
    return a_out, b_out, report(u, size_vp, a_out, b_out)


# -- Ruzsa covering -------------------------------------------------------------

@dataclass
class CoverReport:
    r: int
    span_size: int
    size_a: int
    size_2a: int
    size_3a: int
    covered: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _span_size(vectors: Sequence[tuple[int, ...]], p: int) -> int:
    from .field import FieldSpec
    from .linalg import rank_gf
    if not vectors:
        return 1
    return p ** rank_gf(np.array(vectors, dtype=np.int64), FieldSpec(p))


def ruzsa_cover(a: AbelianSet) -> tuple[list, CoverReport]:
    """Greedy b_i in 3A with disjoint A + b_i; then 3A is inside the union of 2A + b_i."""
    g = a.group
    if g.kind != "F_p^d":
        raise TypeError("expected a subset of F_p^d")
    if not len(a):
        raise ValueError("set must be nonempty")
    sym = AbelianSet(g, a.elements + tuple(g.neg(x) for x in a) + (g.zero,))
    check_cap(len(sym) ** 3, 2**22, "3A enumeration")
    two = sumset(sym, sym)
    three = sumset(two, sym)
    chosen: list = []
    used: set = set()
    for x in three:
        shifted = {g.add(y, x) for y in sym}
        if used.isdisjoint(shifted):
            chosen.append(x)
            used |= shifted
    cover = {g.add(y, bi) for bi in chosen for y in two}
    ok = three.as_set() <= cover
    if not ok:
        raise BoundViolation("3A is not covered by the translates of 2A")
    rep = CoverReport(len(chosen), _span_size(list(sym), g.p), len(sym), len(two), len(three), ok)
    return chosen, rep


# -- sum-product ----------------------------------------------------------------

def sum_product_stats(a: AbelianSet | Iterable[int]) -> dict:
    if not isinstance(a, AbelianSet):
        a = AbelianSet.ints(a)
    if not len(a):
        raise ValueError("set must be nonempty")
    s = len(sumset(a, a))
    prod = productset(a, a)
    m = len(a)
    return {
        "size": m,
        "sumset": s,
        "productset": len(prod),
        "max": max(s, len(prod)),
        "product_difference": len(difference(prod, prod)),
        "ratio_elekes": max(s, len(prod)) / m ** 1.25,
        "ratio_gk": len(difference(prod, prod)) / (m * m / math.log(m)) if m > 1 else None,
    }


# -- vectorised exhaustive checks over subsets of F_p ------------------------------

def subsets_of_size(p: int, k: int) -> np.ndarray:
    check_cap(math.comb(p, k), 2**20, "subset enumeration")
    return np.array(list(itertools.combinations(range(p), k)), dtype=np.int64).reshape(-1, k)


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    out = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        out += (x & np.uint64(1)).astype(np.int64)
        x >>= np.uint64(1)
    return out


def _mask(vals: np.ndarray) -> np.ndarray:
    return np.bitwise_or.reduce(np.left_shift(np.int64(1), vals), axis=1)


def _rot(mask: np.ndarray, a: int, p: int) -> np.ndarray:
    full = (1 << p) - 1
    if a == 0:
        return mask
    return ((mask << a) | (mask >> (p - a))) & full


def _mask_sum(m1: np.ndarray, m2: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(m1)
    for a in range(p):
        hit = (m1 >> a) & 1
        out |= np.where(hit == 1, _rot(m2, a, p), 0)
    return out


def _mask_neg(m: np.ndarray, p: int) -> np.ndarray:
    out = m & 1
    for a in range(1, p):
        out |= ((m >> a) & 1) << (p - a)
    return out


def batch_good_lambda(p: int, subsets: np.ndarray) -> np.ndarray:
    """max over lambda of |A + lambda A| for every row of ``subsets``."""
    if p > 62:
        raise ValueError("bitmask engine handles p <= 62")
    best = np.zeros(len(subsets), dtype=np.int64)
    for lam in range(1, p):
        vals = (subsets[:, :, None] + lam * subsets[:, None, :]) % p
        best = np.maximum(best, _popcount(_mask(vals.reshape(len(subsets), -1))))
    return best


def batch_growth(p: int, subsets: np.ndarray) -> np.ndarray:
    """|3A^2 - 3A^2| for every row of ``subsets``."""
    if p > 62:
        raise ValueError("bitmask engine handles p <= 62")
    prods = (subsets[:, :, None] * subsets[:, None, :]) % p
    sq = _mask(prods.reshape(len(subsets), -1))
    two = _mask_sum(sq, sq, p)
    three = _mask_sum(two, sq, p)
    return _popcount(_mask_sum(three, _mask_neg(three, p), p))
