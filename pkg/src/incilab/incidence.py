"""Points, lines and incidences over Q and F_p; joints; distance statistics; PG(2, p).

Rational points are tuples of Fractions.  Points over F_p are tuples of
residues and every function that accepts them takes the prime as ``p``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .field import check_cap, is_prime
from .linalg import rank_exact

__all__ = [
    "Line2",
    "Line3",
    "ProjMap",
    "parse_point",
    "line_through",
    "on_line",
    "count_incidences",
    "cs_bounds",
    "rich_lines",
    "beck_stats",
    "st_grid",
    "joints_grid",
    "count_joints",
    "distance_stats",
    "unit_distance_pairs",
    "elekes_sharir_lines",
    "proj_normalize",
    "embed",
    "infinity_of",
    "apply",
    "image_line",
    "send_to_infinity",
    "proj_points",
    "proj_lines",
]

Point = tuple


def parse_point(coords: Sequence) -> tuple[Fraction, ...]:
    """Rationals from ints, floats-as-strings or "p/q" strings."""
    return tuple(Fraction(c) for c in coords)


def _inv(x, p: int | None):
    return Fraction(1) / x if p is None else pow(int(x), -1, p)


def _red(x, p: int | None):
    return Fraction(x) if p is None else int(x) % p


# -- planar lines ---------------------------------------------------------------

@dataclass(frozen=True)
class Line2:
    """aX + bY + c = 0 with the first nonzero of (a, b) equal to 1."""

    a: object
    b: object
    c: object
    p: int | None = None

    @classmethod
    def make(cls, a, b, c, p: int | None = None) -> Line2:
        a, b, c = _red(a, p), _red(b, p), _red(c, p)
        if not a and not b:
            raise ValueError("(a, b) must not both vanish")
        s = _inv(a if a else b, p)
        a, b, c = (_red(x * s, p) for x in (a, b, c))
        return cls(a, b, c, p)

    @classmethod
    def from_slope(cls, slope, intercept, p: int | None = None) -> Line2:
        """y = slope * x + intercept."""
        return cls.make(slope, -1, intercept, p)

    def contains(self, pt: Sequence) -> bool:
        val = self.a * pt[0] + self.b * pt[1] + self.c
        return val == 0 if self.p is None else val % self.p == 0

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b), str(self.c)]


def line_through(u: Sequence, v: Sequence, p: int | None = None) -> Line2:
    if tuple(u) == tuple(v):
        raise ValueError("need two distinct points")
    a = v[1] - u[1]
    b = u[0] - v[0]
    c = -(a * u[0] + b * u[1])
    return Line2.make(a, b, c, p)


def on_line(pt: Sequence, line: Line2) -> bool:
    return line.contains(pt)


def count_incidences(points: Iterable[Sequence], lines: Iterable[Line2]) -> int:
    pts = [tuple(x) for x in points]
    return sum(1 for ln in lines for pt in pts if ln.contains(pt))


def _sqrt_le(lhs: Fraction, mult: int, radicand: int) -> bool:
    """lhs <= mult * sqrt(radicand), exactly."""
    if lhs <= 0:
        return True
    return lhs * lhs <= mult * mult * radicand


def cs_bounds(incidences: int, n_points: int, n_lines: int, const: int = 2) -> dict:
    """I <= C(|P||L|^(1/2) + |L|) and I <= C(|L||P|^(1/2) + |P|), checked exactly."""
    i = Fraction(incidences, const)
    first = _sqrt_le(i - n_lines, n_points, n_lines)
    second = _sqrt_le(i - n_points, n_lines, n_points)
    return {
        "incidences": incidences,
        "bound_points": const * (n_points * math.sqrt(n_lines) + n_lines),
        "bound_lines": const * (n_lines * math.sqrt(n_points) + n_points),
        "holds": first and second,
    }


def _lines_by_pairs(points: Sequence, p: int | None = None) -> dict[Line2, set[int]]:
    pts = [tuple(x) for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("repeated points")
    check_cap(len(pts) ** 2, None, "pair enumeration")
    out: dict[Line2, set[int]] = defaultdict(set)
    for i, j in itertools.combinations(range(len(pts)), 2):
        ln = line_through(pts[i], pts[j], p)
        out[ln].update((i, j))
    return out


def rich_lines(points: Sequence, k: int, p: int | None = None) -> set[Line2]:
    if k < 2:
        raise ValueError("richness threshold must be at least 2")
    return {ln for ln, s in _lines_by_pairs(points, p).items() if len(s) >= k}


def beck_stats(points: Sequence, p: int | None = None) -> dict:
    if len(points) < 2:
        raise ValueError("need at least two points")
    lines = _lines_by_pairs(points, p)
    n = len(points)
    top = max(len(s) for s in lines.values())
    return {
        "lines_spanned": len(lines),
        "max_collinear": top,
        "ordinary_lines": sum(1 for s in lines.values() if len(s) == 2),
        "collinear_ratio": top / n,
        "lines_ratio": len(lines) / n**2,
    }


def st_grid(m: int) -> tuple[list[tuple[Fraction, Fraction]], list[Line2]]:
    """P = [M] x [2M^2], L = {y = ax + b : a in [M], b in [M^2]}; I = M^4."""
    pts = [(Fraction(x), Fraction(y)) for x in range(1, m + 1) for y in range(1, 2 * m * m + 1)]
    lines = [Line2.from_slope(a, b) for a in range(1, m + 1) for b in range(1, m * m + 1)]
    return pts, lines


# -- lines in 3-space and joints ------------------------------------------------

@dataclass(frozen=True)
class Line3:
    """Direction with leading entry 1; base point has 0 in that coordinate."""

    base: tuple[Fraction, Fraction, Fraction]
    direction: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def make(cls, base: Sequence, direction: Sequence) -> Line3:
        d = parse_point(direction)
        k = next((i for i, c in enumerate(d) if c), None)
        if k is None:
            raise ValueError("zero direction")
        d = tuple(c / d[k] for c in d)
        b = parse_point(base)
        t = b[k]
        b = tuple(x - t * y for x, y in zip(b, d))
        return cls(b, d)

    def at(self, t) -> tuple[Fraction, ...]:
        return tuple(x + t * y for x, y in zip(self.base, self.direction))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _meet(l1: Line3, l2: Line3):
    n = _cross(l1.direction, l2.direction)
    if not any(n):
        return None
    w = tuple(b - a for a, b in zip(l1.base, l2.base))
    if _dot(w, n) != 0:
        return None
    t = _dot(_cross(w, l2.direction), n) / _dot(n, n)
    return l1.at(t)


def joints_grid(n: int) -> list[Line3]:
    """The 3N^2 axis-parallel lines through the points of [N]^3."""
    out = []
    rng = range(1, n + 1)
    for i, j in itertools.product(rng, rng):
        out.append(Line3.make((i, j, 0), (0, 0, 1)))
        out.append(Line3.make((i, 0, j), (0, 1, 0)))
        out.append(Line3.make((0, i, j), (1, 0, 0)))
    return out


def count_joints(lines: Sequence[Line3], return_points: bool = False):
    """Points on three lines with linearly independent directions."""
    lines = list(dict.fromkeys(lines))
    check_cap(len(lines) ** 2, None, "line-pair enumeration")
    through: dict[tuple, set[int]] = defaultdict(set)
    for i, j in itertools.combinations(range(len(lines)), 2):
        pt = _meet(lines[i], lines[j])
        if pt is not None:
            through[pt].update((i, j))
    joints = [pt for pt, idx in through.items()
              if len(idx) >= 3 and rank_exact([lines[i].direction for i in idx]) == 3]
    return (len(joints), sorted(joints)) if return_points else len(joints)


# -- distances ------------------------------------------------------------------

def _sq(u, v) -> Fraction:
    return (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2


def distance_stats(points: Sequence[Sequence]) -> dict:
    """Q(P) over all ordered quadruples, and d(P) = #distinct squared distances (0 included)."""
    pts = [parse_point(x) for x in points]
    if not pts:
        raise ValueError("empty point set")
    check_cap(len(pts) ** 2, None, "distance enumeration")
    hist = Counter(_sq(a, b) for a in pts for b in pts)
    q = sum(c * c for c in hist.values())
    zero = hist.get(Fraction(0), 0)
    q_nondeg = q - zero * zero
    d = len(hist)
    lower = Fraction(len(pts) ** 4, q)
    if d < lower:
        raise AssertionError("d(P) < |P|^4 / Q(P)")
    return {
        "Q": q,
        "Q_nondegenerate": q_nondeg,
        "distinct_sq_distances": d,
        "distinct_nonzero": d - (1 if zero else 0),
        "lower_bound": lower,
        "unit_pairs": hist.get(Fraction(1), 0) // 2,
    }


def unit_distance_pairs(points: Sequence[Sequence]) -> int:
    return distance_stats(points)["unit_pairs"]


def _translation_free_count(pts: list) -> int:
    """#{(a,b,c,d) : a != b, |a-b| = |c-d|, c - a != d - b}."""
    n = len(pts)
    by_dist: dict[Fraction, list[tuple[int, int]]] = defaultdict(list)
    for i, j in itertools.product(range(n), repeat=2):
        if i != j:
            by_dist[_sq(pts[i], pts[j])].append((i, j))
    total = 0
    for pairs in by_dist.values():
        for (a, b), (c, d) in itertools.product(pairs, repeat=2):
            if (pts[c][0] - pts[a][0], pts[c][1] - pts[a][1]) != (pts[d][0] - pts[b][0], pts[d][1] - pts[b][1]):
                total += 1
    return total


def elekes_sharir_lines(points: Sequence[Sequence], tol: float = 1e-9) -> dict:
    """The lines of rotations taking a to c, for all ordered pairs, in float coordinates.

    L_{a,c} = (m, 0) + t (J(c - a)/|c - a|, 1/|c - a|) with m the midpoint and J
    the quarter turn; L_{a,a} is the vertical line over a.
    """
    exact = [parse_point(x) for x in points]
    if len(set(exact)) != len(exact):
        raise ValueError("repeated points")
    pts = np.array([[float(x), float(y)] for x, y in exact])
    bases, dirs, labels = [], [], []
    for i, j in itertools.product(range(len(pts)), repeat=2):
        a, c = pts[i], pts[j]
        if i == j:
            bases.append([a[0], a[1], 0.0])
            dirs.append([0.0, 0.0, 1.0])
        else:
            v = c - a
            r = math.hypot(v[0], v[1])
            m = (a + c) / 2
            bases.append([m[0], m[1], 0.0])
            dirs.append([-v[1] / r, v[0] / r, 1.0 / r])
        labels.append((i, j))
    bases, dirs = np.array(bases), np.array(dirs)
    meets = 0
    for s, t in itertools.permutations(range(len(bases)), 2):
        n = np.cross(dirs[s], dirs[t])
        nn = np.linalg.norm(n)
        if nn < tol:
            continue
        if abs(np.dot(bases[t] - bases[s], n)) / nn < tol:
            meets += 1
    exact_count = _translation_free_count(exact)
    return {
        "lines": len(bases),
        "bases": bases,
        "directions": dirs,
        "labels": labels,
        "intersecting_pairs": meets,
        "exact_non_translation": exact_count,
        "translation_cap": len(exact) ** 3,
        "consistent": meets == exact_count,
    }


# -- projective plane over F_p --------------------------------------------------

def proj_normalize(x: Sequence[int], p: int) -> tuple[int, ...]:
    x = tuple(int(c) % p for c in x)
    lead = next((c for c in x if c), None)
    if lead is None:
        raise ValueError("the zero triple is not a projective point")
    s = pow(lead, -1, p)
    return tuple(c * s % p for c in x)


def embed(pt: Sequence[int], p: int, leading: bool = False) -> tuple[int, ...]:
    """Affine point to projective: (x : y : 1), or (1 : x_1 : ... : x_d) with ``leading``."""
    coords = tuple(int(c) % p for c in pt)
    return (1,) + coords if leading else coords + (1,)


def infinity_of(line: Line2) -> tuple[int, int, int]:
    """The point (-b : a : 0) shared by all lines parallel to aX + bY + c = 0."""
    if line.p is None:
        raise ValueError("expected a line over F_p")
    return proj_normalize((-line.b, line.a, 0), line.p)


@dataclass(frozen=True)
class ProjMap:
    matrix: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError("field must be prime")
        m = tuple(tuple(int(c) % self.p for c in row) for row in self.matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("expected a 3x3 matrix")
        if _det3(m) % self.p == 0:
            raise ValueError("singular matrix")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, p: int) -> ProjMap:
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)), p)

    def inverse(self) -> ProjMap:
        return ProjMap(_inv3(self.matrix, self.p), self.p)


def _det3(m) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _inv3(m, p: int):
    det_inv = pow(_det3(m) % p, -1, p)
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[m[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            cof[i][j] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return tuple(tuple(cof[j][i] * det_inv % p for j in range(3)) for i in range(3))


def apply(m: ProjMap, x: Sequence[int]) -> tuple[int, int, int]:
    v = [sum(m.matrix[i][j] * int(x[j]) for j in range(3)) for i in range(3)]
    return proj_normalize(v, m.p)


def image_line(m: ProjMap, line: Sequence[int]) -> tuple[int, int, int]:
    """Coefficients l' = l M^-1 of the image of the projective line l . x = 0."""
    inv = _inv3(m.matrix, m.p)
    v = [sum(int(line[i]) * inv[i][j] for i in range(3)) for j in range(3)]
    return proj_normalize(v, m.p)


def send_to_infinity(p0: Sequence[int], p1: Sequence[int], p: int) -> ProjMap:
    """A map with p0 -> (1:0:0) and p1 -> (0:1:0)."""
    a, b = proj_normalize(p0, p), proj_normalize(p1, p)
    if a == b:
        raise ValueError("points must differ")
    for third in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        cols = (a, b, third)
        n = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
        if _det3(n) % p:
            return ProjMap(_inv3(n, p), p)
    raise AssertionError("unreachable: two distinct points always extend to a basis")


def proj_points(p: int) -> list[tuple[int, int, int]]:
    return sorted({proj_normalize(x, p) for x in itertools.product(range(p), repeat=3) if any(x)})


def proj_lines(p: int) -> list[tuple[int, int, int]]:
    """Lines of PG(2, p) as coefficient triples; duality makes them the points again."""
    return proj_points(p)
