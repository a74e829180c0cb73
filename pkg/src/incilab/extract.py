"""Min-entropy, statistical distance, the line merger and two-source bias over Z_3."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .field import FieldSpec, check_cap, get_field
from .kakeya import KakeyaWitness, canonical_direction

__all__ = [
    "Distribution",
    "AdversaryMap",
    "min_entropy",
    "statistical_distance",
    "closeness_to_min_entropy",
    "merger_distribution",
    "nikodym_adversary",
    "identity_adversary",
    "biw_growth",
    "biw_f1",
    "biw_f2",
    "bias",
    "bias_squared",
    "foursum_bias_check",
    "bourgain_source",
]


@dataclass(frozen=True)
class Distribution:
    """A probability vector on an ordered finite domain."""

    domain: tuple
    probs: tuple
    exact: bool = True

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.probs):
            raise ValueError("domain and probability vector differ in length")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain has repeated elements")
        if self.exact:
            probs = tuple(Fraction(p) for p in self.probs)
            if any(p < 0 for p in probs) or sum(probs) != 1:
                raise ValueError("probabilities must be nonnegative and sum to 1")
        else:
            probs = tuple(float(p) for p in self.probs)
            if any(p < 0 for p in probs) or abs(math.fsum(probs) - 1) > 1e-12:
                raise ValueError("probabilities must be nonnegative and sum to 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_mapping(cls, masses: Mapping[Hashable, object], domain: Iterable | None = None,
                     exact: bool = True) -> Distribution:
        dom = tuple(domain) if domain is not None else tuple(sorted(masses))
        zero = Fraction(0) if exact else 0.0
        return cls(dom, tuple(masses.get(x, zero) for x in dom), exact)

    @classmethod
    def uniform(cls, domain: Iterable, support: Iterable | None = None) -> Distribution:
        dom = tuple(domain)
        sup = set(dom if support is None else support)
        w = Fraction(1, len(sup))
        return cls(dom, tuple(w if x in sup else Fraction(0) for x in dom))

    @classmethod
    def point_mass(cls, domain: Iterable, at: Hashable) -> Distribution:
        dom = tuple(domain)
        return cls(dom, tuple(Fraction(int(x == at)) for x in dom))

    def prob(self, x) -> Fraction | float:
        return self.probs[self.domain.index(x)]

    def mass(self, subset: Iterable) -> Fraction | float:
        s = set(subset)
        return sum((p for x, p in zip(self.domain, self.probs) if x in s),
                   Fraction(0) if self.exact else 0.0)

    def support(self) -> list:
        return [x for x, p in zip(self.domain, self.probs) if p > 0]

    def collision_probability(self):
        return sum(p * p for p in self.probs)

    def to_json(self) -> dict:
        probs = [str(p) for p in self.probs] if self.exact else list(self.probs)
        dom = [list(x) if isinstance(x, tuple) else x for x in self.domain]
        return {"domain": dom, "probs": probs}

    @classmethod
    def from_json(cls, data: dict | str) -> Distribution:
        if isinstance(data, str):
            data = json.loads(data)
        dom = tuple(tuple(x) if isinstance(x, list) else x for x in data["domain"])
        probs = data["probs"]
        exact = all(isinstance(p, (str, int)) for p in probs)
        return cls(dom, tuple(Fraction(p) if exact else float(p) for p in probs), exact)


@dataclass(frozen=True)
class AdversaryMap:
    """Y = f(X) as an explicit table on F_q^n."""

    table: Mapping[tuple, tuple]

    def __call__(self, x: tuple) -> tuple:
        return self.table[x]


def min_entropy(d: Distribution) -> float:
    top = max(d.probs)
    return -math.log2(top) if top < 1 else 0.0


def statistical_distance(p: Distribution, q: Distribution):
    if set(p.domain) != set(q.domain):
        raise ValueError("distributions live on different domains")
    qp = dict(zip(q.domain, q.probs))
    total = sum(abs(a - qp[x]) for x, a in zip(p.domain, p.probs))
    return total / 2


def closeness_to_min_entropy(d: Distribution, k: float):
    """Least eps with d eps-close to some distribution of min-entropy >= k."""
    if k < 0:
        raise ValueError("need 2^k >= 1")
    if d.exact and float(k).is_integer():
        cap = Fraction(1, 2 ** int(k))
    else:
        cap = 2.0 ** (-k)
    if len(d.domain) * cap < 1:
        return Fraction(1) if d.exact else 1.0
    return sum((p - cap for p in d.probs if p > cap), Fraction(0) if isinstance(cap, Fraction) else 0.0)


def merger_distribution(spec: FieldSpec, n: int, source: Distribution,
                        adversary: AdversaryMap, cap: int | None = None) -> Distribution:
    """Exact law of Z = aX + b f(X) with a, b uniform in F_q."""
    q = spec.q
    check_cap(q**n * q * q, cap if cap is not None else 2**24, "merger enumeration")
    domain = list(itertools.product(range(q), repeat=n))
    weights = [Fraction(0)] * len(domain) if source.exact else np.zeros(len(domain))
    scal = np.arange(q, dtype=np.int64)
    for x, px in zip(source.domain, source.probs):
        if not px:
            continue
        xv = np.array([spec.coerce(c) for c in x], dtype=np.int64)
        yv = np.array([spec.coerce(c) for c in adversary(tuple(x))], dtype=np.int64)
        ax = spec.vmul(scal[:, None], xv[None, :])
        by = spec.vmul(scal[:, None], yv[None, :])
        zs = spec.vadd(ax[:, None, :], by[None, :, :]).reshape(-1, n)
        codes = np.zeros(len(zs), dtype=np.int64)
        for j in range(n):
            codes = codes * q + zs[:, j]
        counts = np.bincount(codes, minlength=q**n)
        share = px / (q * q)
        for c in np.nonzero(counts)[0]:
            weights[int(c)] += share * int(counts[c])
    return Distribution(tuple(domain), tuple(weights), source.exact)


def identity_adversary(q: int, n: int) -> AdversaryMap:
    return AdversaryMap({x: x for x in itertools.product(range(q), repeat=n)})


def nikodym_adversary(w: KakeyaWitness) -> AdversaryMap:
    """f(x) = y(x), the base of the Kakeya line in direction x; f(0) is a point of K."""
    p = w.spec.p
    anchor = min(w.points)
    table = {}
    for x in itertools.product(range(p), repeat=w.n):
        table[x] = w.base_of[canonical_direction(x, p)] if any(x) else anchor
    return AdversaryMap(table)


# -- BIW ------------------------------------------------------------------------

def biw_growth(a: Iterable[int], b: Iterable[int], c: Iterable[int], spec: FieldSpec) -> dict:
    a, b, c = set(a), set(b), set(c)
    if not (a and b and c):
        raise ValueError("sets must be nonempty")
    out = {spec.add(x, spec.mul(y, z)) for x in a for y in b for z in c}
    ratio = math.log(len(out)) / math.log(len(a)) if len(a) > 1 else None
    return {"size_ABC": len(out), "ratio": ratio}


def biw_f1(d1: Distribution, d2: Distribution, d3: Distribution, spec: FieldSpec) -> Distribution:
    """Law of X1 + X2 X3 for independent field-valued sources (domains are codes)."""
    masses: dict[int, Fraction] = {}
    for x1, p1 in zip(d1.domain, d1.probs):
        if not p1:
            continue
        for x2, p2 in zip(d2.domain, d2.probs):
            if not p2:
                continue
            for x3, p3 in zip(d3.domain, d3.probs):
                if p3:
                    z = spec.add(x1, spec.mul(x2, x3))
                    masses[z] = masses.get(z, 0) + p1 * p2 * p3
    return Distribution.from_mapping(masses, range(spec.q), exact=d1.exact)


def biw_f2(sources: Sequence[Distribution], spec: FieldSpec) -> Distribution:
    """f1(f1(X1,X2,X3), f1(X4,X5,X6), f1(X7,X8,X9))."""
    if len(sources) != 9:
        raise ValueError("f2 takes nine sources")
    inner = [biw_f1(*sources[i:i + 3], spec) for i in (0, 3, 6)]
    return biw_f1(*inner, spec)


# -- bias over Z_3 --------------------------------------------------------------

def _z3_vectors(s: Iterable[Sequence[int]]) -> np.ndarray:
    arr = np.array([tuple(int(c) % 3 for c in v) for v in s], dtype=np.int64)
    if arr.size == 0:
        raise ValueError("sets must be nonempty")
    return arr.reshape(len(arr), -1)


def _omega_sum(counts: Sequence[int]) -> tuple[int, int]:
    """c0 + c1 w + c2 w^2 rewritten as a + b w using w^2 = -1 - w."""
    c0, c1, c2 = (int(c) for c in counts)
    return c0 - c2, c1 - c2


def _norm2(a: int, b: int) -> int:
    return a * a - a * b + b * b


def _phase_counts(a: np.ndarray, b: np.ndarray, wa=None, wb=None, omega_power: int = 1) -> list[int]:
    ip = (a @ b.T) * omega_power % 3
    if wa is None:
        return [int(np.count_nonzero(ip == r)) for r in range(3)]
    w = np.outer(wa, wb)
    return [int(w[ip == r].sum()) for r in range(3)]


def bias_squared(a, b, omega_power: int = 1) -> Fraction:
    """|E_{a,b} w^<a,b>|^2 as an exact rational."""
    if omega_power not in (1, 2):
        raise ValueError("omega_power must be 1 or 2")
    av, bv = _z3_vectors(a), _z3_vectors(b)
    if av.shape[1] != bv.shape[1]:
        raise ValueError("sets live in different dimensions")
    x, y = _omega_sum(_phase_counts(av, bv, omega_power=omega_power))
    return Fraction(_norm2(x, y), (len(av) * len(bv)) ** 2)


def bias(a, b, omega_power: int = 1, check: bool = True) -> float:
    av, bv = _z3_vectors(a), _z3_vectors(b)
    sq = bias_squared(av, bv, omega_power)
    if check:
        n = av.shape[1]
        # bias^2 <= 3^n / (|A||B|), compared exactly
        if sq * len(av) * len(bv) > 3**n:
            raise AssertionError("bias bound violated")
    return math.sqrt(sq)


def _fold4(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Support and integer weights of a1 + a2 + a3 + a4 for a_i uniform on v."""
    n = v.shape[1]
    check_cap(3**n, 3**6, "Z_3^n convolution")
    codes = (v * (3 ** np.arange(n))).sum(axis=1)
    hist = np.bincount(codes, minlength=3**n).astype(object)
    digits = np.array(list(itertools.product(range(3), repeat=n)))[:, ::-1]
    allcodes = (digits * (3 ** np.arange(n))).sum(axis=1)
    order = np.argsort(allcodes)
    digits = digits[order]
    add_table = np.zeros((3**n, 3**n), dtype=np.int64)
    for i in range(3**n):
        add_table[i] = ((digits[i] + digits) % 3 * (3 ** np.arange(n))).sum(axis=1)
    cur = hist
    for _ in range(3):
        nxt = np.zeros(3**n, dtype=object)
        for i in np.nonzero(cur)[0]:
            for j in np.nonzero(hist)[0]:
                nxt[add_table[i, j]] += cur[i] * hist[j]
        cur = nxt
    nz = np.nonzero(cur)[0]
    return digits[nz], np.array([int(x) for x in cur[nz]], dtype=object)


def foursum_bias_check(a, b) -> dict:
    """lhs = bias(A, B), rhs = bias(4A, 4B)^(1/16) at the distribution level."""
    av, bv = _z3_vectors(a), _z3_vectors(b)
    lhs2 = bias_squared(av, bv)
    sa, wa = _fold4(av)
    sb, wb = _fold4(bv)
    ip = (sa @ sb.T) % 3
    w = np.outer(wa, wb)
    counts = [sum(w[ip == r].tolist(), 0) if np.any(ip == r) else 0 for r in range(3)]
    x, y = _omega_sum(counts)
    rhs2 = Fraction(_norm2(x, y), (len(av) ** 4 * len(bv) ** 4) ** 2)
    lhs = math.sqrt(lhs2)
    rhs = float(rhs2) ** (1 / 32)
    # lhs <= rhs  <=>  lhs2^16 <= rhs2, exactly
    return {"lhs": lhs, "rhs": rhs, "holds_exact": lhs2**16 <= rhs2,
            "lhs_squared": lhs2, "rhs_32nd_power": rhs2}


def bourgain_source(p_exp: int, spec: FieldSpec | None = None) -> list[tuple[int, ...]]:
    """{(x, x^2)} for x in F_{3^p_exp}, written in the power basis."""
    spec = spec or get_field(3**p_exp)
    if spec.p != 3 or spec.m != p_exp:
        raise ValueError("need a field of order 3^p_exp")
    check_cap(spec.q)
    return [spec.rep(x) + spec.rep(spec.mul(x, x)) for x in range(spec.q)]
