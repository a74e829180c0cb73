"""Seeded random streams split by (module, purpose).

The stream for a given purpose is ``default_rng([seed, crc32(module), crc32(purpose)])``,
so adding a new consumer never shifts the numbers another one sees.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["DEFAULT_SEED", "stream"]

DEFAULT_SEED = 20240601


def stream(seed: int | None, module: str, purpose: str) -> np.random.Generator:
    seed = DEFAULT_SEED if seed is None else int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    keys = [seed & 0xFFFFFFFF, seed >> 32, zlib.crc32(module.encode()), zlib.crc32(purpose.encode())]
    return np.random.default_rng(keys)
