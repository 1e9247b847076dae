from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance
from gsetbench.model import cut_value
from gsetbench.solvers.annealing import simulated_annealing
from gsetbench.solvers.local_search import local_search_trial
from gsetbench.solvers.params import SolverKind, SolverParams
from gsetbench.solvers.records import TrialRecord
from gsetbench.solvers.tempering import parallel_tempering

_DISPATCH = {
    SolverKind.LOCAL_SEARCH: local_search_trial,
    SolverKind.SIMULATED_ANNEALING: simulated_annealing,
    SolverKind.PARALLEL_TEMPERING: parallel_tempering,
    SolverKind.PT_ICM: parallel_tempering,
}


class CertificationError(RuntimeError):
    """A solver reported a value its own configuration does not reach."""


def solve(inst: ProblemInstance, params: SolverParams, seed: int, trial_index: int = 0) -> TrialRecord:
    t0 = time.perf_counter()
    rec = _DISPATCH[params.kind](inst, params, seed)
    rec.trial_index = trial_index
    recheck = cut_value(inst, rec.best_config)
    if recheck != rec.best_value:
        raise CertificationError(
            f"trial {trial_index}: reported {rec.best_value} but configuration cuts {recheck}"
        )
    rec.wall_time = time.perf_counter() - t0
    return rec


@dataclass
class BenchRecord:
    instance_id: str
    params: SolverParams
    num_trials: int
    master_seed: int
    target: int | None
    records: list[TrialRecord]

    @property
    def successes(self) -> int | None:
        if self.target is None:
            return None
        return sum(r.best_value >= self.target for r in self.records)

    @property
    def p_s(self) -> float | None:
        s = self.successes
        return None if s is None else s / self.num_trials

    @property
    def t_trial(self) -> float:
        return math.fsum(r.wall_time for r in self.records) / len(self.records)

    @property
    def best(self) -> TrialRecord:
        """Best trial; ties go to the lowest trial index."""
        return max(self.records, key=lambda r: (r.best_value, -r.trial_index))

    @property
    def sweeps_per_run(self) -> int:
        return self.params.sweeps_per_run * self.params.restarts


def run_trials(
    inst: ProblemInstance,
    params: SolverParams,
    num_trials: int,
    target: int | None = None,
    workers: int = 1,
    master_seed: int = 0,
) -> BenchRecord:
    """Run independent trials on a bounded thread pool.

    Trial ``t`` is seeded by ``trial_seed(master_seed, t)``; records come back
    ordered by trial index, so the result does not depend on ``workers``.
    """
    if num_trials < 1:
        raise ValueError("num_trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    def one(t: int) -> TrialRecord:
        return solve(inst, params, _rng.trial_seed(master_seed, t), t)

    if workers == 1:
        records = [one(t) for t in range(num_trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, range(num_trials)))
    records.sort(key=lambda r: r.trial_index)
    return BenchRecord(inst.id, params, num_trials, master_seed, target, records)
