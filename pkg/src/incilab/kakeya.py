"""Small Kakeya and Nikodym sets over prime fields, with rank certificates."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec, check_cap, get_field, is_prime
from .linalg import rank_gf
from .poly import evaluation_matrix, monomials

__all__ = [
    "KakeyaWitness",
    "NikodymWitness",
    "RankCertificate",
    "CertificateError",
    "projective_directions",
    "canonical_direction",
    "build_kakeya",
    "kakeya_core",
    "verify_kakeya",
    "find_kakeya_witness",
    "nikodym_from_kakeya",
    "verify_nikodym",
    "certify_lower_bound",
]

Point = tuple[int, ...]


class CertificateError(RuntimeError):
    """A verified Kakeya set failed its rank certificate; this is a bug."""


def _line(spec: FieldSpec, base: Point, direction: Point) -> list[Point]:
    p = spec.p
    return [tuple((b + t * d) % p for b, d in zip(base, direction)) for t in range(p)]


def canonical_direction(x: Sequence[int], p: int) -> Point:
    """The lexicographically smallest nonzero multiple of x, i.e. leading entry 1."""
    lead = next((c for c in x if c % p), None)
    if lead is None:
        raise ValueError("the zero vector has no direction")
    s = pow(lead, -1, p)
    return tuple(c * s % p for c in x)


def projective_directions(q: int, n: int) -> list[Point]:
    check_cap(q**n, None, "direction enumeration")
    return [x for x in itertools.product(range(q), repeat=n)
            if any(x) and x[next(i for i, c in enumerate(x) if c)] == 1]


@dataclass
class KakeyaWitness:
    spec: FieldSpec
    n: int
    points: frozenset[Point]
    base_of: dict[Point, Point] = field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.spec.q

    def line(self, direction: Sequence[int]) -> list[Point]:
        d = canonical_direction(direction, self.spec.p)
        return _line(self.spec, self.base_of[d], d)

    def size_constant(self) -> float:
        """c with |K| = q^n / 2^(n-1) + c q^(n-1)."""
        q, n = self.q, self.n
        return (len(self.points) - q**n / 2 ** (n - 1)) / q ** (n - 1)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "points": [list(p) for p in sorted(self.points)],
            "base_of": {",".join(map(str, d)): list(b) for d, b in sorted(self.base_of.items())},
        }

    @classmethod
    def from_json(cls, data: dict | str) -> KakeyaWitness:
        if isinstance(data, str):
            data = json.loads(data)
        q, n = int(data["q"]), int(data["n"])
        if not is_prime(q):
            raise ValueError("Kakeya witnesses live over prime fields")
        pts = frozenset(tuple(int(c) % q for c in p) for p in data["points"])
        if any(len(p) != n for p in pts):
            raise ValueError("point of wrong dimension")
        base = {tuple(int(c) for c in k.split(",")): tuple(int(c) % q for c in v)
                for k, v in data.get("base_of", {}).items()}
        return cls(FieldSpec(q), n, pts, base)


@dataclass
class NikodymWitness:
    spec: FieldSpec
    n: int
    points: frozenset[Point]
    line_of: dict[Point, Point] = field(default_factory=dict)


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    monomial_count: int
    implied_lower_bound: int
    volume_bound: float

    @property
    def bound_holds(self) -> bool:
        return self.implied_lower_bound >= self.volume_bound


def _check_params(q: int, n: int) -> FieldSpec:
    if q % 2 == 0:
        raise ValueError("the construction needs odd characteristic")
    if not is_prime(q):
        raise ValueError(f"q = {q} must be an odd prime")
    if n < 2:
        raise ValueError("dimension must be at least 2")
    check_cap(q**n, None, "Kakeya construction")
    return FieldSpec(q)


def kakeya_core(q: int, n: int) -> frozenset[Point]:
    """{(v_1^2/4 + v_1 t, ..., v_{n-1}^2/4 + v_{n-1} t, t)}."""
    _check_params(q, n)
    quarter = pow(4, -1, q)
    pts = set()
    for t in range(q):
        coords = [sorted({(v * v * quarter + v * t) % q for v in range(q)})] * (n - 1)
        for c in itertools.product(*coords):
            pts.add(c + (t,))
    return frozenset(pts)


def build_kakeya(q: int, n: int) -> KakeyaWitness:
    """Core set plus one origin line per direction with last coordinate 0."""
    spec = _check_params(q, n)
    quarter = pow(4, -1, q)
    pts = set(kakeya_core(q, n))
    base_of: dict[Point, Point] = {}
    for d in projective_directions(q, n):
        if d[-1]:
            inv_last = pow(d[-1], -1, q)
            b = [c * inv_last % q for c in d[:-1]]
            base_of[d] = tuple(x * x * quarter % q for x in b) + (0,)
        else:
            base_of[d] = (0,) * n
            pts.update(_line(spec, base_of[d], d))
    return KakeyaWitness(spec, n, frozenset(pts), base_of)


def verify_kakeya(w: KakeyaWitness) -> bool:
    """Every projective direction has a stored base whose full line lies in the set."""
    check_cap(w.q**w.n, None, "Kakeya verification")
    for d in projective_directions(w.q, w.n):
        base = w.base_of.get(d)
        if base is None:
            return False
        if any(pt not in w.points for pt in _line(w.spec, base, d)):
            return False
    return True


def find_kakeya_witness(points: Iterable[Sequence[int]], q: int, n: int) -> KakeyaWitness | None:
    """Search the set itself for a line in every direction."""
    spec = FieldSpec(q)
    pts = frozenset(tuple(int(c) % q for c in p) for p in points)
    base_of: dict[Point, Point] = {}
    ordered = sorted(pts)
    for d in projective_directions(q, n):
        for y in ordered:
            if all(pt in pts for pt in _line(spec, y, d)):
                base_of[d] = y
                break
        else:
            return None
    return KakeyaWitness(spec, n, pts, base_of)


def nikodym_from_kakeya(w: KakeyaWitness) -> NikodymWitness:
    """M = {t x : x in K}; for z outside M the punctured line {z + s y(z)} lies in M."""
    if not verify_kakeya(w):
        raise ValueError("invalid Kakeya witness")
    p, n = w.spec.p, w.n
    m_pts = {tuple(t * c % p for c in x) for x in w.points for t in range(p)}
    line_of: dict[Point, Point] = {}
    for z in itertools.product(range(p), repeat=n):
        if z in m_pts:
            continue
        y = w.base_of[canonical_direction(z, p)]
        line_of[z] = y
    out = NikodymWitness(w.spec, n, frozenset(m_pts), line_of)
    if not verify_nikodym(out):
        raise RuntimeError("derived Nikodym witness failed verification")
    return out


def verify_nikodym(w: NikodymWitness) -> bool:
    p = w.spec.p
    for z in itertools.product(range(p), repeat=w.n):
        if z in w.points:
            continue
        x = w.line_of.get(z)
        if x is None or not any(x):
            return False
        if any(tuple((a + t * b) % p for a, b in zip(z, x)) not in w.points for t in range(1, p)):
            return False
    return True


def certify_lower_bound(points: Iterable[Sequence[int]], q: int, n: int,
                        check_kakeya: bool = True) -> RankCertificate:
    """Rank of the evaluation matrix of all monomials of degree <= q-1 on the set."""
    spec = FieldSpec(q)
    pts = sorted({tuple(int(c) % q for c in p) for p in points})
    if check_kakeya and find_kakeya_witness(pts, q, n) is None:
        raise ValueError("point set is not a Kakeya set")
    mons = monomials(n, q - 1)
    check_cap(len(pts) * len(mons), 2**22, "evaluation matrix")
    mat = evaluation_matrix(np.array(pts, dtype=np.int64), n, q - 1, spec, mons)
    rank = rank_gf(mat, spec)
    count = math.comb(n + q - 1, n)
    if rank != count:
        raise CertificateError(f"rank {rank} < {count} on a Kakeya set")
    return RankCertificate(rank, count, count, q**n / math.factorial(n))
