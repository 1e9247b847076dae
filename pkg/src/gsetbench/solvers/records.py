from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class TrialRecord:
    trial_index: int
    seed: int
    best_value: int
    best_config: np.ndarray
    sweeps_executed: int
    sweep_at_best: int
    wall_time: float

    def same_outcome(self, other: TrialRecord) -> bool:
        """Equality ignoring wall time."""
        return (
            self.trial_index == other.trial_index
            and self.seed == other.seed
            and self.best_value == other.best_value
            and np.array_equal(self.best_config, other.best_config)
            and self.sweeps_executed == other.sweeps_executed
            and self.sweep_at_best == other.sweep_at_best
        )
