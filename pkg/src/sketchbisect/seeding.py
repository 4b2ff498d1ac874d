"""Deterministic derivation of independent child seeds."""

import numpy as np


def spawn_seed(seed, *path):
    """Derive a child seed from ``seed`` and a path of integer keys.

    Distinct paths give statistically independent streams, and the
    derivation is a pure function of its arguments, so parallel and
    serial schedules produce identical child seeds.
    """
    keys = [int(seed), *(int(k) for k in path)]
    if any(k < 0 for k in keys):
        raise ValueError("seed and path keys must be non-negative integers")
    ss = np.random.SeedSequence(keys)
    return int(ss.generate_state(1, np.uint64)[0])
