"""
Locally correcting Reed-Muller codes
====================================

Recover one symbol of a codeword by reading a single random line through it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from incilab.field import FieldSpec
from incilab.lcc import RMCode, decode_batch, encode, single_error_success
from incilab.poly import MultiPoly

code = RMCode(FieldSpec(5), 2, 3)
print(f"RM code over F_5, m=2, degree {code.e}: length {code.length}, dimension {code.dimension}")

word = encode(code, MultiPoly.parse("x0^3 + 2*x0*x1 + 4", code.spec, 2))
print("codeword:", word.tolist())

# with one corrupted symbol, five of the six lines through a point avoid it
ok, total = single_error_success(code)
print(f"single error, exhaustive: {ok}/{total} = {Fraction(ok, total)}")

rng = np.random.default_rng(1)
trials = 20_000
words = np.repeat(word[None, :], trials, axis=0)
pos = rng.integers(code.length, size=trials)
for r in range(trials):
    j = (pos[r] + 1 + rng.integers(code.length - 1)) % code.length
    words[r, j] = (words[r, j] + 1 + rng.integers(4)) % 5
got = decode_batch(code, words, pos, rng.integers(len(code.directions), size=trials))
print(f"single error, {trials} random trials: {np.mean(got == word[pos]):.4f}")
