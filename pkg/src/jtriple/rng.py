"""Deterministic RNG streams.

Every randomized battery derives one independent substream per trial from
``(seed, trial index)``, so trials can run in any order (or in parallel)
and still reproduce bit-identically.
"""

from __future__ import annotations

import numpy as np


def substream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the substream addressed by ``(seed, *path)``."""
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(path)))


def complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    """Standard complex Gaussian samples (unit total variance per entry)."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)
