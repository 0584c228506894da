"""Deterministic seed derivation so parallel schedules cannot change results."""

from __future__ import annotations

import numpy as np


def derive_seed(*path: int) -> int:
    """A stable child seed for a (master seed, task ids...) path."""
    return int(np.random.SeedSequence(tuple(int(p) for p in path)).generate_state(1)[0])


def make_rng(*path: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(tuple(int(p) for p in path))))
