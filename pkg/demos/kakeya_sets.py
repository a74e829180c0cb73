"""
Kakeya sets over finite fields
==============================

Build a small Kakeya set in F_q^n, check that it contains a line in every
direction, and compare its size with the polynomial-method lower bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from incilab.kakeya import build_kakeya, certify_lower_bound, nikodym_from_kakeya, verify_kakeya, verify_nikodym

# a union of parabola-like curves plus the lines at infinity
for q, n in [(3, 2), (5, 2), (7, 2), (5, 3)]:
    w = build_kakeya(q, n)
    upper = Fraction(q**n, 2 ** (n - 1)) + 2 * q ** (n - 1)
    print(f"q={q} n={n}: |K| = {len(w.points):4d}   construction bound {float(upper):8.1f}   "
          f"valid {verify_kakeya(w)}")

# the rank of the evaluation matrix on K forces |K| >= C(q + n - 1, n)
w = build_kakeya(7, 2)
cert = certify_lower_bound(w.points, 7, 2)
print(f"\nq=7 n=2: rank {cert.rank} of {cert.monomial_count} monomials, "
      f"so every Kakeya set has >= {cert.implied_lower_bound} points (q^n/n! = {Fraction(49, factorial(2))})")

# scaling a Kakeya set through the origin gives a Nikodym set
nik = nikodym_from_kakeya(build_kakeya(5, 2))
print(f"\nNikodym set from q=5: {len(nik.points)} of 25 points, valid {verify_nikodym(nik)}")
