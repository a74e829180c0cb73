"""Exact arithmetic in F_p and F_{p^m}.

Elements are carried around as small integer codes: the code of the
element with coefficient vector ``rep = (c_0, ..., c_{m-1})`` (``c_i`` the
coefficient of ``alpha**i``) is ``sum(c_i * p**i)``.  Code 0 is zero and
code 1 is one, and for prime fields the code is the residue itself.
:class:`FieldElement` wraps a code for callers who prefer operators.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ENUMERATION_CAP",
    "EnumerationCapError",
    "FieldMismatchError",
    "FieldSpec",
    "FieldElement",
    "add",
    "mul",
    "inv",
    "enumerate_field",
    "get_field",
    "find_irreducible",
    "is_prime",
]

ENUMERATION_CAP = 2**16

# Conway-style moduli, lowest coefficient first, leading 1 last.
BUILTIN_MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (1, 0, 1)),
    16: (2, 4, (1, 1, 0, 0, 1)),
    27: (3, 3, (1, 2, 0, 1)),
}

_TABLE_LIMIT = 1024


class EnumerationCapError(ValueError):
    """Raised when an exhaustive loop would exceed the enumeration cap."""


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_cap(count: int, cap: int | None = None, what: str = "enumeration") -> None:
    limit = ENUMERATION_CAP if cap is None else cap
    if count > limit:
        raise EnumerationCapError(f"{what} of size {count} exceeds cap {limit}")


# -- polynomials over F_p as coefficient lists (lowest degree first) --------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        k = a[-1] * lead_inv % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - k * bc) % p
        _trim(a)
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    m = len(modulus) - 1
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _pmod(modulus, list(low) + [1], p):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m over F_p in lexicographic search."""
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^m}; ``modulus`` lists coefficients lowest degree first."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None
    _tables: dict = dc_field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be at least 1")
        if self.m == 1:
            if self.modulus is not None and len(self.modulus) != 2:
                raise ValueError("a prime field takes no modulus")
            object.__setattr__(self, "modulus", None)
        else:
            if self.modulus is None:
                raise ValueError("extension fields need a modulus")
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _is_irreducible(mod, self.p):
                raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
            object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "_tables", {})

    # -- constructors -------------------------------------------------------

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def of_order(cls, q: int) -> FieldSpec:
        return get_field(q)

    @classmethod
    def from_json(cls, data: dict | str) -> FieldSpec:
        if isinstance(data, str):
            data = json.loads(data)
        m = int(data.get("m", 1))
        modulus = data.get("modulus")
        return cls(int(data["p"]), m, tuple(modulus) if modulus is not None else None)

    def to_json(self) -> dict:
        out: dict = {"p": self.p, "m": self.m}
        if self.m > 1:
            out["modulus"] = list(self.modulus)
        return out

    # -- basic facts --------------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __str__(self) -> str:
        return f"F_{self.q}"

    def rep(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code(self, rep: Sequence[int]) -> int:
        if len(rep) != self.m:
            raise ValueError(f"rep must have {self.m} residues")
        c = 0
        for r in reversed(rep):
            c = c * self.p + int(r) % self.p
        return c

    def coerce(self, x) -> int:
        """Code of ``x``: a FieldElement, an int (reduced mod p into the prime subfield
        for m > 1 only when it is below p) or a rep tuple."""
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatchError(f"{x.spec} element used in {self}")
            return x.code
        if isinstance(x, (tuple, list)):
            return self.code(x)
        x = int(x)
        if self.m == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise ValueError(f"code {x} out of range for {self}")
        return x

    def element(self, x) -> FieldElement:
        return FieldElement(self, self.coerce(x))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self, cap: int | None = None) -> list[FieldElement]:
        check_cap(self.q, cap, "field enumeration")
        return [FieldElement(self, c) for c in range(self.q)]

    # -- scalar arithmetic on codes -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        t = self._table("add")
        if t is not None:
            return int(t[a, b])
        return self.code([(x + y) % self.p for x, y in zip(self.rep(a), self.rep(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self.code([-x % self.p for x in self.rep(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        t = self._table("mul")
        if t is not None:
            return int(t[a, b])
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        ra, rb = self.rep(a), self.rep(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ra):
            if x:
                for j, y in enumerate(rb):
                    prod[i + j] += x * y
        red = _pmod(prod, self.modulus, self.p)
        return self.code(red + [0] * (self.m - len(red)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    # -- vectorised arithmetic on integer arrays -----------------------------

    def _table(self, name: str):
        if self.q > _TABLE_LIMIT:
            return None
        tables = self._tables
        if name not in tables:
            q = self.q
            if name == "add":
                reps = np.array([self.rep(c) for c in range(q)], dtype=np.int64)
                s = (reps[:, None, :] + reps[None, :, :]) % self.p
                weights = self.p ** np.arange(self.m, dtype=np.int64)
                tables[name] = (s * weights).sum(axis=2)
            elif name == "mul":
                t = np.zeros((q, q), dtype=np.int64)
                for a in range(1, q):
                    for b in range(a, q):
                        t[a, b] = t[b, a] = self._mul_slow(a, b)
                tables[name] = t
            elif name == "neg":
                tables[name] = np.array([self.neg(c) for c in range(q)], dtype=np.int64)
            elif name == "inv":
                tables[name] = np.array([0] + [self.inv(c) for c in range(1, q)], dtype=np.int64)
        return tables[name]

    def vadd(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self._require_table("add")[a, b]

    def vneg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        return self._require_table("neg")[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        return self._require_table("mul")[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        return self._require_table("inv")[a]

    def _require_table(self, name: str):
        t = self._table(name)
        if t is None:
            raise EnumerationCapError(f"vectorised arithmetic needs q <= {_TABLE_LIMIT}")
        return t

    def power_table(self, max_exp: int) -> np.ndarray:
        """``T[x, e] = x**e`` for every code x and 0 <= e <= max_exp, with 0**0 = 1."""
        check_cap(self.q, None, "power table")
        t = np.zeros((self.q, max_exp + 1), dtype=np.int64)
        t[:, 0] = 1
        xs = np.arange(self.q, dtype=np.int64)
        for e in range(1, max_exp + 1):
            t[:, e] = self.vmul(t[:, e - 1], xs)
        return t


@lru_cache(maxsize=None)
def get_field(q: int) -> FieldSpec:
    """The field of order q, using a built-in modulus for prime powers."""
    if is_prime(q):
        return FieldSpec(q)
    if q in BUILTIN_MODULI:
        p, m, mod = BUILTIN_MODULI[q]
        return FieldSpec(p, m, mod)
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                break
            return FieldSpec(p, m, find_irreducible(p, m))
    raise ValueError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    @property
    def rep(self) -> tuple[int, ...]:
        return self.spec.rep(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"{self.spec} vs {other.spec}")
            return other.code
        return self.spec.coerce(other)

    def __add__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self.code, self._other(other)))

    def __rsub__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.code))

    def __mul__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.div(self.code, self._other(other)))

    def __rtruediv__(self, other) -> FieldElement:
        return FieldElement(self.spec, self.spec.div(self._other(other), self.code))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        if self.spec.m == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.rep):
            if c:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def _pair(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise FieldMismatchError(f"{a.spec} vs {b.spec}")
    return a.spec


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    s = _pair(a, b)
    return FieldElement(s, s.add(a.code, b.code))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    s = _pair(a, b)
    return FieldElement(s, s.mul(a.code, b.code))


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def enumerate_field(spec: FieldSpec, cap: int | None = None) -> list[FieldElement]:
    """All elements in code order, which is lexicographic on rep read from the top coefficient."""
    return spec.elements(cap)


def points(spec: FieldSpec, n: int, cap: int | None = None) -> Iterable[tuple[int, ...]]:
    """All code tuples of F^n in lexicographic order."""
    check_cap(spec.q**n, cap, f"enumeration of {spec}^{n}")
    return itertools.product(range(spec.q), repeat=n)


def point_array(spec: FieldSpec, n: int, cap: int | None = None) -> np.ndarray:
    """``q**n x n`` array of all points, rows in lexicographic order."""
    check_cap(spec.q**n, cap, f"enumeration of {spec}^{n}")
    grids = np.indices((spec.q,) * n).reshape(n, -1).T
    return grids.astype(np.int64)
