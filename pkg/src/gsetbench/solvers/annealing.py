from __future__ import annotations

import math
import time

import numpy as np

from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance
from gsetbench.model import IncrementalState, random_config
from gsetbench.solvers import _kernels as K
from gsetbench.solvers.params import InvalidParamsError, SolverParams
from gsetbench.solvers.records import TrialRecord

# random numbers drawn per kernel call
_BLOCK_BUDGET = 1 << 20


def calibrate_t_hot(state: IncrementalState, target: float, probes: int, gen: np.random.Generator) -> float:
    """Temperature at which about ``target`` of ``probes`` random single
    flips from ``state`` would be accepted."""
    idx = gen.integers(0, state.inst.n, size=probes)
    gains = state.spins[idx].astype(np.float64) * state.field[idx]
    uphill = np.count_nonzero(gains >= 0) / probes
    losses = gains[gains < 0]
    if uphill >= target or losses.size == 0:
        return max(1.0, float(np.abs(gains).mean()))

    def acceptance(t: float) -> float:
        return uphill + np.exp(losses / t).sum() / probes

    lo, hi = 1e-6, 1.0
    while acceptance(hi) < target:
        hi *= 2.0
        if hi > 1e12:
            break
    for _ in range(100):
        mid = math.sqrt(lo * hi)
        if acceptance(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def schedule(t_hot: float, t_cold: float, sweeps: int, factor: float | None = None) -> np.ndarray:
    """Per-sweep temperatures ``t_hot * factor**s``; by default the factor
    makes the final sweep run at ``t_cold``."""
    if not t_hot > t_cold > 0:
        raise InvalidParamsError("need t_hot > t_cold > 0")
    if factor is None:
        factor = (t_cold / t_hot) ** (1.0 / (sweeps - 1)) if sweeps > 1 else 1.0
    return t_hot * factor ** np.arange(sweeps, dtype=np.float64)


def anneal(
    state: IncrementalState,
    temperatures: np.ndarray,
    gen: np.random.Generator,
    best: tuple[int, np.ndarray, int] | None = None,
    sweep_offset: int = 0,
) -> tuple[int, np.ndarray, int]:
    """Run one sweep per temperature on ``state`` in place.

    Each sweep visits every vertex once in a fresh random order.  Returns
    ``(best_cut, best_spins, best_sweep)`` including the incoming ``best``.
    """
    inst = state.inst
    n = inst.n
    offsets, neighbors, weights = K.csr(inst)
    if best is None:
        best_cut, best_spins, best_sweep = state.cut, state.spins.copy(), sweep_offset
    else:
        best_cut, best_spins, best_sweep = best
        if state.cut > best_cut:
            best_cut, best_spins, best_sweep = state.cut, state.spins.copy(), sweep_offset
    block = max(1, _BLOCK_BUDGET // n)
    base = np.arange(n, dtype=np.int32)
    inv_t = 1.0 / np.asarray(temperatures, dtype=np.float64)
    cut = state.cut
    for start in range(0, len(inv_t), block):
        stop = min(start + block, len(inv_t))
        rows = stop - start
        orders = gen.permuted(np.broadcast_to(base, (rows, n)), axis=1)
        uniforms = gen.random((rows, n))
        cut, best_cut, best_sweep = K.anneal_block(
            offsets, neighbors, weights, state.spins, state.field, cut,
            orders, uniforms, inv_t[start:stop],
            best_spins, best_cut, best_sweep, sweep_offset + start,
        )
    state.cut = int(cut)
    state.energy = inst.total_weight - 2 * state.cut
    return int(best_cut), best_spins, int(best_sweep)


def simulated_annealing(inst: ProblemInstance, params: SolverParams, seed: int) -> TrialRecord:
    """One SA trial: ``restarts`` independent anneals of ``sweeps_per_run``
    sweeps each, keeping the best configuration seen."""
    t0 = time.perf_counter()
    sweeps_gen = _rng.stream(seed, _rng.STREAM_SWEEPS)
    t_hot = params.sa_t_hot
    best = None
    offset = 0
    for restart in range(params.restarts):
        start = random_config(inst.n, seed, restart)
        state = IncrementalState(inst, start)
        if t_hot is None:
            t_hot = calibrate_t_hot(
                state, params.sa_initial_acceptance, params.sa_probe_flips,
                _rng.stream(seed, _rng.STREAM_CALIBRATE),
            )
            t_hot = max(t_hot, 2.0 * params.sa_t_cold)
        temps = schedule(t_hot, params.sa_t_cold, params.sweeps_per_run, params.sa_factor)
        best = anneal(state, temps, sweeps_gen, best, offset)
        offset += params.sweeps_per_run
    best_cut, best_spins, best_sweep = best
    return TrialRecord(0, seed, best_cut, best_spins, offset, best_sweep, time.perf_counter() - t0)
