"""Exact linear algebra: row reduction over finite fields and over Q or Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .field import FieldSpec

__all__ = [
    "GaussianRational",
    "rref_gf",
    "rank_gf",
    "nullspace_gf",
    "solve_gf",
    "rref_exact",
    "rank_exact",
    "nullspace_exact",
]


# -- finite fields -----------------------------------------------------------

def rref_gf(matrix, spec: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer-code matrix over ``spec``.

    Pivots are chosen column by column from the left, taking the first
    usable row, so the output is deterministic.
    """
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv_inv = spec.inv(int(a[r, c]))
        a[r] = spec.vmul(a[r], piv_inv)
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = spec.vsub(a[hit], spec.vmul(col[hit][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank_gf(matrix, spec: FieldSpec) -> int:
    a = np.asarray(matrix)
    if a.size == 0:
        return 0
    return len(rref_gf(a, spec)[1])


def nullspace_gf(matrix, spec: FieldSpec, ncols: int | None = None) -> list[np.ndarray]:
    """Basis of the right null space, one vector per free column, in column order."""
    a = np.asarray(matrix, dtype=np.int64)
    if a.size == 0:
        n = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    r, pivots = rref_gf(a, spec)
    n = a.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = spec.neg(int(r[i, f]))
        basis.append(v)
    return basis


def solve_gf(matrix, rhs, spec: FieldSpec) -> np.ndarray | None:
    """One solution x of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    a = np.asarray(matrix, dtype=np.int64)
    b = np.asarray(rhs, dtype=np.int64).reshape(-1, 1)
    aug, pivots = rref_gf(np.hstack([a, b]), spec)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = aug[i, n]
    return x


# -- exact characteristic zero ----------------------------------------------

@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with Fraction parts; enough arithmetic for row reduction."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return GaussianRational(Fraction(x.real), Fraction(x.imag))
        return GaussianRational(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.of(o))

    def __rsub__(self, o):
        return GaussianRational.of(o) - self

    def __mul__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = GaussianRational.of(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, o):
        return GaussianRational.of(o) / self

    def __eq__(self, o) -> bool:
        try:
            o = GaussianRational.of(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)


def _exact(x) -> Any:
    if isinstance(x, (GaussianRational, Fraction)):
        return x
    if isinstance(x, complex):
        return GaussianRational.of(x)
    return Fraction(x)


def rref_exact(rows: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], list[int]]:
    """Gauss-Jordan elimination with exact Fraction (or Q(i)) arithmetic."""
    a = [[_exact(x) for x in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_exact(rows: Sequence[Sequence[Any]]) -> int:
    return len(rref_exact(rows)[1])


def nullspace_exact(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Any]]:
    r, pivots = rref_exact(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    pset = set(pivots)
    out = []
    for f in (c for c in range(n) if c not in pset):
        v: list[Any] = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][f]
        out.append(v)
    return out
