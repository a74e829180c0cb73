"""Sparse multivariate polynomials over a finite field.

Coefficients are stored as field codes (see :mod:`incilab.field`).  Points
may be given as codes, ints or FieldElements.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .field import FieldElement, FieldSpec, check_cap, point_array
from .linalg import nullspace_gf, rank_gf

__all__ = [
    "MultiPoly",
    "UniPoly",
    "monomials",
    "evaluation_matrix",
    "evaluate",
    "count_zeros",
    "vanishing_poly",
    "restrict_to_line",
    "gradient",
    "homogenize",
    "random_poly",
]

Exps = tuple[int, ...]


def monomials(n: int, d: int) -> list[Exps]:
    """Exponent vectors of total degree <= d, graded then lexicographic (x0 highest)."""
    out: list[Exps] = []
    for deg in range(d + 1):
        block = [e for e in _compositions(n, deg)]
        block.sort(reverse=True)
        out.extend(block)
    return out


def _compositions(n: int, total: int) -> Iterable[Exps]:
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class UniPoly:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __call__(self, t) -> int:
        s, t = self.spec, self.spec.coerce(t)
        acc = 0
        for c in reversed(self.coeffs):
            acc = s.add(s.mul(acc, t), c)
        return acc

    @classmethod
    def interpolate(cls, spec: FieldSpec, xs: Sequence[int], ys: Sequence[int]) -> UniPoly:
        """The unique polynomial of degree < len(xs) through the given nodes."""
        s = spec
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        total = [0] * len(xs)
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            basis, denom = [1], 1
            for j, xj in enumerate(xs):
                if j == i:
                    continue
                # multiply basis by (t - xj)
                nb = [0] * (len(basis) + 1)
                for k, b in enumerate(basis):
                    nb[k + 1] = s.add(nb[k + 1], b)
                    nb[k] = s.sub(nb[k], s.mul(b, xj))
                basis = nb
                denom = s.mul(denom, s.sub(xi, xj))
            scale = s.div(yi, denom)
            for k, b in enumerate(basis):
                total[k] = s.add(total[k], s.mul(scale, b))
        return cls(spec, tuple(total))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


class MultiPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero codes."""

    __slots__ = ("spec", "n_vars", "terms")

    def __init__(self, spec: FieldSpec, n_vars: int, terms: Mapping[Exps, object] | None = None):
        if n_vars < 1:
            raise ValueError("need at least one variable")
        clean: dict[Exps, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n_vars or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            code = spec.add(clean.get(e, 0), spec.coerce(c))
            if code:
                clean[e] = code
            else:
                clean.pop(e, None)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))))

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec, n_vars: int) -> MultiPoly:
        return cls(spec, n_vars)

    @classmethod
    def constant(cls, spec: FieldSpec, n_vars: int, c) -> MultiPoly:
        return cls(spec, n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, spec: FieldSpec, n_vars: int, i: int) -> MultiPoly:
        e = [0] * n_vars
        e[i] = 1
        return cls(spec, n_vars, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, spec: FieldSpec, n_vars: int | None = None) -> MultiPoly:
        """Read ``"3*x0^2*x1 + 4"``; integer coefficients are field codes."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial text")
        found = [int(v) for v in re.findall(r"x(\d+)", src)]
        n = n_vars if n_vars is not None else (max(found) + 1 if found else 1)
        if found and max(found) >= n:
            raise ValueError(f"variable x{max(found)} out of range for {n} variables")
        if not re.fullmatch(r"[+-]?[^+-]+(?:[+-][^+-]+)*", src):
            raise ValueError(f"cannot parse {text!r}")
        terms: dict[Exps, int] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
            coeff, exps = 1, [0] * n
            for factor in body.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if m:
                    exps[int(m.group(1))] += int(m.group(2) or 1)
                elif re.fullmatch(r"\d+", factor):
                    coeff = spec.mul(coeff, spec.coerce(int(factor)))
                else:
                    raise ValueError(f"cannot parse factor {factor!r}")
            if sign == "-":
                coeff = spec.neg(coeff)
            key = tuple(exps)
            terms[key] = spec.add(terms.get(key, 0), coeff)
        return cls(spec, n, terms)

    @classmethod
    def from_json(cls, data: Sequence[Mapping], spec: FieldSpec, n_vars: int | None = None) -> MultiPoly:
        if n_vars is None:
            if not data:
                raise ValueError("n_vars needed for an empty term list")
            n_vars = len(data[0]["e"])
        terms: dict[Exps, int] = {}
        for t in data:
            e = tuple(t["e"])
            terms[e] = spec.add(terms.get(e, 0), spec.coerce(t["c"]))
        return cls(spec, n_vars, terms)

    def to_json(self) -> list[dict]:
        return [{"e": list(e), "c": c} for e, c in self.terms.items()]

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            factors = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MultiPoly({self.spec}, {self.n_vars}, {self.to_text()!r})"

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> float:
        return max((sum(e) for e in self.terms), default=-math.inf)

    def coeff(self, exps: Sequence[int]) -> FieldElement:
        return FieldElement(self.spec, self.terms.get(tuple(exps), 0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def top_part(self) -> MultiPoly:
        d = self.degree
        return MultiPoly(self.spec, self.n_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.spec == other.spec
                and self.n_vars == other.n_vars and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.spec, self.n_vars, tuple(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other: MultiPoly) -> None:
        if self.spec != other.spec or self.n_vars != other.n_vars:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._same(other)
            return other
        return MultiPoly.constant(self.spec, self.n_vars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = self.spec.add(terms.get(e, 0), c)
        return MultiPoly(self.spec, self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.spec, self.n_vars, {e: self.spec.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._lift(other)
        s = self.spec
        terms: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = s.add(terms.get(e, 0), s.mul(c1, c2))
        return MultiPoly(s, self.n_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.constant(self.spec, self.n_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- evaluation ---------------------------------------------------------

    def __call__(self, *point) -> FieldElement:
        if len(point) == 1 and isinstance(point[0], (tuple, list, np.ndarray)):
            point = tuple(point[0])
        return evaluate(self, point)

    def evaluate_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorised evaluation on an ``N x n_vars`` array of codes."""
        pts = np.asarray(pts, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] != self.n_vars:
            raise ValueError(f"expected points with {self.n_vars} coordinates")
        s = self.spec
        out = np.zeros(len(pts), dtype=np.int64)
        if not self.terms:
            return out
        top = max(max(e) for e in self.terms)
        table = s.power_table(top)
        for e, c in self.terms.items():
            val = np.full(len(pts), c, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    val = s.vmul(val, table[pts[:, i], k])
            out = s.vadd(out, val)
        return out

    def substitute(self, var: int, value) -> MultiPoly:
        """Fix variable ``var`` to a field value; the variable stays (with exponent 0)."""
        s = self.spec
        v = s.coerce(value)
        terms: dict[Exps, int] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[var] = 0
            key = tuple(ne)
            terms[key] = s.add(terms.get(key, 0), s.mul(c, s.pow(v, e[var])))
        return MultiPoly(s, self.n_vars, terms)

    def drop_first(self) -> MultiPoly:
        """Forget variable 0, which must not occur."""
        if any(e[0] for e in self.terms):
            raise ValueError("variable 0 still occurs")
        return MultiPoly(self.spec, self.n_vars - 1, {e[1:]: c for e, c in self.terms.items()})

    def partial(self, i: int) -> MultiPoly:
        s = self.spec
        terms: dict[Exps, int] = {}
        for e, c in self.terms.items():
            k = e[i] % s.p
            if k == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = s.mul(c, k)
        return MultiPoly(s, self.n_vars, terms)


def _point_codes(f: MultiPoly, point: Sequence) -> list[int]:
    if len(point) != f.n_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.n_vars}")
    return [f.spec.coerce(x) for x in point]


def evaluate(f: MultiPoly, point: Sequence) -> FieldElement:
    s = f.spec
    xs = _point_codes(f, point)
    acc = 0
    for e, c in f.terms.items():
        val = c
        for x, k in zip(xs, e):
            if k:
                val = s.mul(val, s.pow(x, k))
        acc = s.add(acc, val)
    return FieldElement(s, acc)


def count_zeros(f: MultiPoly, cap: int | None = None) -> int:
    """Number of zeros of a nonzero polynomial in F_q^n, by exhaustive evaluation."""
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    pts = point_array(f.spec, f.n_vars, cap)
    return int(np.count_nonzero(f.evaluate_many(pts) == 0))


def evaluation_matrix(pts, n: int, d: int, spec: FieldSpec, mons: list[Exps] | None = None) -> np.ndarray:
    """Rows indexed by points, columns by the monomials of degree <= d."""
    mons = monomials(n, d) if mons is None else mons
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, n)
    table = spec.power_table(max(d, 1))
    out = np.ones((len(pts), len(mons)), dtype=np.int64)
    for j, e in enumerate(mons):
        col = np.ones(len(pts), dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                col = spec.vmul(col, table[pts[:, i], k])
        out[:, j] = col
    return out


def vanishing_poly(points: Iterable[Sequence], d: int, spec: FieldSpec, n: int | None = None) -> MultiPoly | None:
    """A nonzero polynomial of degree <= d vanishing on ``points``, or None."""
    pts = [tuple(spec.coerce(x) for x in p) for p in points]
    if n is None:
        if not pts:
            raise ValueError("dimension needed for an empty point set")
        n = len(pts[0])
    if d < 0:
        raise ValueError("degree cap must be nonnegative")
    if not pts:
        return MultiPoly.constant(spec, n, 1)
    mons = monomials(n, d)
    check_cap(len(pts) * len(mons), None, "evaluation matrix")
    mat = evaluation_matrix(np.array(sorted(set(pts))), n, d, spec, mons)
    basis = nullspace_gf(mat, spec)
    if not basis:
        return None
    v = basis[0]
    return MultiPoly(spec, n, {mons[j]: int(v[j]) for j in np.nonzero(v)[0]})


def evaluation_rank(pts, n: int, d: int, spec: FieldSpec) -> int:
    return rank_gf(evaluation_matrix(pts, n, d, spec), spec)


def restrict_to_line(f: MultiPoly, a: Sequence, b: Sequence) -> UniPoly:
    """h(t) = f(a + t b) as a univariate polynomial."""
    s = f.spec
    a = _point_codes(f, a)
    b = _point_codes(f, b)
    if not any(b):
        raise ValueError("direction must be nonzero")
    total: list[int] = [0]
    for e, c in f.terms.items():
        prod = [c]
        for ai, bi, k in zip(a, b, e):
            for _ in range(k):
                nxt = [0] * (len(prod) + 1)
                for j, pj in enumerate(prod):
                    nxt[j] = s.add(nxt[j], s.mul(pj, ai))
                    nxt[j + 1] = s.add(nxt[j + 1], s.mul(pj, bi))
                prod = nxt
        if len(prod) > len(total):
            total += [0] * (len(prod) - len(total))
        for j, pj in enumerate(prod):
            total[j] = s.add(total[j], pj)
    return UniPoly(s, tuple(total))


def gradient(f: MultiPoly) -> list[MultiPoly]:
    return [f.partial(i) for i in range(f.n_vars)]


def homogenize(f: MultiPoly) -> MultiPoly:
    """x0^d f(x1/x0, ..., xn/x0), with the new variable placed first."""
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    d = int(f.degree)
    return MultiPoly(f.spec, f.n_vars + 1, {(d - sum(e),) + e: c for e, c in f.terms.items()})


def random_poly(spec: FieldSpec, n: int, d: int, rng: np.random.Generator, density: float = 0.5) -> MultiPoly:
    """A random nonzero polynomial of degree at most d."""
    mons = monomials(n, d)
    while True:
        mask = rng.random(len(mons)) < density
        coeffs = rng.integers(1, spec.q, size=len(mons))
        f = MultiPoly(spec, n, {m: int(c) for m, c, k in zip(mons, coeffs, mask) if k})
        if not f.is_zero():
            return f
