from __future__ import annotations

import time

import numpy as np

from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance
from gsetbench.model import IncrementalState, random_config
from gsetbench.solvers import _kernels as K
from gsetbench.solvers.params import SolverParams
from gsetbench.solvers.records import TrialRecord


def local_search(inst: ProblemInstance, start, gen: np.random.Generator) -> tuple[IncrementalState, int]:
    """Climb to a 1-flip local optimum by first improvement.

    Each pass visits the vertices in a fresh random order and flips any vertex
    with positive gain; stops after a pass with no flip.  Returns the final
    state and the number of passes made.
    """
    state = start if isinstance(start, IncrementalState) else IncrementalState(inst, start)
    state = state.copy()
    offsets, neighbors, weights = K.csr(inst)
    passes = 0
    while True:
        order = gen.permutation(inst.n).astype(np.int32)
        cut, improved = K.local_search_pass(offsets, neighbors, weights, state.spins, state.field, state.cut, order)
        passes += 1
        state.cut = int(cut)
        state.energy = inst.total_weight - 2 * state.cut
        if not improved:
            return state, passes


def local_search_trial(inst: ProblemInstance, params: SolverParams, seed: int) -> TrialRecord:
    """``restarts`` random starts, each driven to a local optimum."""
    t0 = time.perf_counter()
    gen = _rng.stream(seed, _rng.STREAM_SWEEPS)
    best_value = None
    best_config = None
    sweeps = 0
    at_best = 0
    for restart in range(params.restarts):
        start = random_config(inst.n, seed, restart)
        state, passes = local_search(inst, start, gen)
        sweeps += passes
        if best_value is None or state.cut > best_value:
            best_value, best_config, at_best = state.cut, state.spins.copy(), sweeps
    return TrialRecord(0, seed, int(best_value), best_config, sweeps, at_best, time.perf_counter() - t0)
