"""Seeded randomness.

Every random stream is a PCG64 generator seeded through
``numpy.random.SeedSequence([seed mod 2**64, *keys])``.  Sub-streams are
derived by appending integer keys (a task index, or the CRC32 of a label),
so results do not depend on execution order or platform.
"""

from __future__ import annotations

import zlib

import numpy as np


def key_of(label) -> int:
    if isinstance(label, int):
        return label % 2**32
    return zlib.crc32(str(label).encode())


def derive_rng(seed: int, *keys) -> np.random.Generator:
    entropy = [int(seed) % 2**64] + [key_of(k) for k in keys]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
