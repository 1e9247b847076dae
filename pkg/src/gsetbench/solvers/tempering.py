"""Parallel tempering, optionally with isoenergetic cluster moves (ICM).

Replicas sample ``exp(-beta * H)`` with ``H`` the Ising energy.  Exchanges
permute which chain sits at which temperature; configurations never move.
With ICM enabled there are two independent ladders and, at each
temperature, the two replicas exchange a cluster of disagreeing spins,
which leaves ``H_a + H_b`` unchanged on instances without local fields.
"""

from __future__ import annotations

import time

import numpy as np

from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance
from gsetbench.model import IncrementalState, local_fields, random_config
from gsetbench.solvers import _kernels as K
from gsetbench.solvers.params import SolverKind, SolverParams
from gsetbench.solvers.records import TrialRecord

_BLOCK_BUDGET = 1 << 21


def icm_move(state_a: IncrementalState, state_b: IncrementalState, gen: np.random.Generator) -> int:
    """Apply one ICM between two replicas in place; returns the cluster size
    (0 when the replicas are identical)."""
    if state_a.inst is not state_b.inst and state_a.inst != state_b.inst:
        raise ValueError("ICM needs two replicas of the same instance")
    inst = state_a.inst
    offsets, neighbors, weights = K.csr(inst)
    stack = np.empty(inst.n, dtype=np.int32)
    mark = K.new_mark(inst.n)
    cut_a, cut_b, size = K.icm(
        offsets, neighbors, weights,
        state_a.spins, state_a.field, state_a.cut,
        state_b.spins, state_b.field, state_b.cut,
        gen.random(), stack, mark, 1,
    )
    for state, cut in ((state_a, cut_a), (state_b, cut_b)):
        state.cut = int(cut)
        state.energy = inst.total_weight - 2 * state.cut
    return int(size)


class Ensemble:
    """Chains, their cached fields/cuts and the temperature assignment."""

    def __init__(self, inst: ProblemInstance, betas: np.ndarray, ladders: int, seed: int):
        self.inst = inst
        self.betas = np.asarray(betas, dtype=np.float64)
        n_temps = len(self.betas)
        n_chains = ladders * n_temps
        self.spins = np.empty((n_chains, inst.n), dtype=np.int8)
        self.field = np.empty((n_chains, inst.n), dtype=np.int64)
        for c in range(n_chains):
            self.spins[c] = random_config(inst.n, seed, c)
            self.field[c] = local_fields(inst, self.spins[c])
        crossing = self.spins[:, inst.u - 1] != self.spins[:, inst.v - 1]
        self.cuts = (crossing * inst.w).sum(axis=1).astype(np.int64)
        self.chain_at = np.arange(n_chains, dtype=np.int64).reshape(ladders, n_temps)

    def energies(self) -> np.ndarray:
        return self.inst.total_weight - 2 * self.cuts


def parallel_tempering(inst: ProblemInstance, params: SolverParams, seed: int) -> TrialRecord:
    """One PT (or PT+ICM, per ``params.kind``) trial of ``sweeps_per_run`` rounds.

    A round is one Metropolis sweep of every chain, the ICM step when
    enabled, and exchange attempts on even or odd neighbouring pairs in
    alternation.  ``restarts`` reruns from fresh random chains.
    """
    t0 = time.perf_counter()
    use_icm = params.kind is SolverKind.PT_ICM
    ladders = 2 if use_icm else 1
    betas = params.betas()
    n_temps = len(betas)
    n = inst.n
    offsets, neighbors, weights = K.csr(inst)
    gen = _rng.stream(seed, _rng.STREAM_SWEEPS)
    stack = np.empty(n, dtype=np.int32)
    mark = K.new_mark(n)
    stamp = 0

    best_cut = None
    best_spins = np.empty(n, dtype=np.int8)
    best_round = 0
    offset = 0
    rounds = params.sweeps_per_run
    for restart in range(params.restarts):
        ens = Ensemble(inst, betas, ladders, _rng.trial_seed(seed, restart))
        top = int(np.argmax(ens.cuts))
        if best_cut is None or ens.cuts[top] > best_cut:
            best_cut = int(ens.cuts[top])
            best_spins[:] = ens.spins[top]
            best_round = offset
        n_chains = ens.spins.shape[0]
        block = max(1, _BLOCK_BUDGET // (n_chains * n))
        for start in range(0, rounds, block):
            rows = min(block, rounds - start)
            sweep_u = gen.random((rows, n_chains, n))
            swap_u = gen.random((rows, ladders, n_temps))
            icm_u = gen.random((rows, n_temps)) if use_icm else np.zeros((rows, n_temps))
            best_cut, best_round, stamp, _, _ = K.tempering_block(
                offsets, neighbors, weights, inst.total_weight,
                ens.spins, ens.field, ens.cuts, ens.chain_at, betas,
                sweep_u, swap_u, icm_u,
                offset + start, params.icm_period, use_icm,
                stack, mark, stamp,
                best_spins, best_cut, best_round,
            )
        offset += rounds
    return TrialRecord(0, seed, int(best_cut), best_spins, offset, int(best_round), time.perf_counter() - t0)
