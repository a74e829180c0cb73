"""
Mergers, min-entropy and character bias
=======================================

The line merger Z = sum_i a^i X_i is attacked by an adversary who steers
every output into a Nikodym set. Then the bias of sets in Z_3^n.
"""

from __future__ import annotations

import itertools
from incilab.extract import (Distribution, bias, foursum_bias_check, identity_adversary, merger_distribution,
                             min_entropy, nikodym_adversary)
from incilab.field import FieldSpec
from incilab.kakeya import build_kakeya, nikodym_from_kakeya

q, n = 5, 3
dom = list(itertools.product(range(q), repeat=n))
src = Distribution.uniform(dom)
honest = merger_distribution(FieldSpec(q), n, src, identity_adversary(q, n))
print(f"identity blocks: output min-entropy {min_entropy(honest):.3f} bits")

w = build_kakeya(q, n)
nik = nikodym_from_kakeya(w)
evil = merger_distribution(FieldSpec(q), n, src, nikodym_adversary(w))
mass = evil.mass(nik.points)
print(f"Nikodym adversary: mass {mass} = {float(mass):.3f} lands in {len(nik.points)} of {q**n} points")
print(f"honest output puts only {float(honest.mass(nik.points)):.3f} there")

# bias of small sets in Z_3^2
a = [(0, 0), (1, 0), (2, 0)]
b = [(0, 0), (0, 1), (0, 2)]
print(f"\nbias(line, line) = {bias(a, a):.3f}, bias(row, column) = {bias(a, b):.3f}")
r = foursum_bias_check(a, a)
print(f"four-sum check: {r['lhs']} <= {r['rhs']:.3f} -> {r['holds_exact']}")
