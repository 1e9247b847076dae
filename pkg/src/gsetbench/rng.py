"""Counter-based random streams.

Every stream is numpy's Philox-4x64 bit generator keyed through a
``SeedSequence(entropy=seed, spawn_key=path)``, so a stream is fully named by
``(seed, path)`` and does not depend on which thread or process consumes it.
"""

from __future__ import annotations

import numpy as np

ALGORITHM = "numpy-philox4x64/seedsequence-v1"

# stream ids used inside a trial
STREAM_INIT = 0
STREAM_SWEEPS = 1
STREAM_CALIBRATE = 2


def stream(seed: int, *path: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def trial_seed(master_seed: int, trial: int) -> int:
    """64-bit seed of trial ``trial`` under ``master_seed``."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
