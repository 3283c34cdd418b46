"""Stable 64-bit seed mixing so trials are reproducible in any order."""

from __future__ import annotations

import random

MASK64 = (1 << 64) - 1
DEFAULT_SEED = 20240601


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def mix(seed: int, *keys: int) -> int:
    """Fold integer keys into ``seed``; the result depends on key order."""
    h = splitmix64(seed & MASK64)
    for k in keys:
        h = splitmix64(h ^ splitmix64(k & MASK64))
    return h


def trial_rng(seed: int, *keys: int) -> random.Random:
    return random.Random(mix(seed, *keys))


def as_rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed & MASK64)
