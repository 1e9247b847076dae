"""Compiled inner loops.

All kernels work on the compressed adjacency of an instance (0-based
``offsets``/``neighbors``/``weights``), ``int8`` spins and ``int64`` local
fields.  Randomness is always passed in as pre-drawn arrays so a kernel is a
deterministic function of its inputs.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def flip(offsets, neighbors, weights, spins, field, i):
    old = spins[i]
    for k in range(offsets[i], offsets[i + 1]):
        field[neighbors[k]] -= 2 * old * weights[k]
    spins[i] = -old


@njit(cache=True, nogil=True)
def local_search_pass(offsets, neighbors, weights, spins, field, cut, order):
    """First-improvement pass in the given vertex order.

    Returns ``(cut, improved)``.
    """
    improved = False
    for k in range(order.shape[0]):
        i = order[k]
        gain = spins[i] * field[i]
        if gain > 0:
            flip(offsets, neighbors, weights, spins, field, i)
            cut += gain
            improved = True
    return cut, improved


@njit(cache=True, nogil=True)
def anneal_block(
    offsets, neighbors, weights, spins, field, cut,
    orders, uniforms, inv_temps,
    best_spins, best_cut, best_sweep, first_sweep,
):
    """Metropolis sweeps on the cut objective, one row of ``orders`` per sweep.

    A move with cut change ``g`` is accepted when ``g >= 0`` or with
    probability ``exp(g * inv_temp)``.  The best configuration is checked at
    the end of every sweep; returns ``(cut, best_cut, best_sweep)``.
    """
    n_sweeps, n = orders.shape
    for s in range(n_sweeps):
        beta = inv_temps[s]
        for k in range(n):
            i = orders[s, k]
            gain = spins[i] * field[i]
            if gain >= 0 or uniforms[s, k] < math.exp(gain * beta):
                flip(offsets, neighbors, weights, spins, field, i)
                cut += gain
        if cut > best_cut:
            best_cut = cut
            best_spins[:] = spins
            best_sweep = first_sweep + s + 1
    return cut, best_cut, best_sweep


@njit(cache=True, nogil=True)
def metropolis_sweep(offsets, neighbors, weights, spins, field, cut, uniforms, beta):
    """Sequential-order sweep at inverse temperature ``beta`` on the Ising
    energy; a flip changes the energy by ``-2 * gain``."""
    n = spins.shape[0]
    for i in range(n):
        gain = spins[i] * field[i]
        if gain >= 0 or uniforms[i] < math.exp(2.0 * beta * gain):
            flip(offsets, neighbors, weights, spins, field, i)
            cut += gain
    return cut


@njit(cache=True, nogil=True)
def icm(offsets, neighbors, weights, spins_a, field_a, cut_a, spins_b, field_b, cut_b, u, stack, mark, stamp):
    """Isoenergetic cluster move between two replicas.

    Sites where the replicas disagree form the negative-overlap set; ``u``
    picks one of them uniformly as the seed, the cluster grows through edges
    whose endpoints both disagree, and every cluster spin is flipped in both
    replicas.  ``mark``/``stamp`` avoid clearing the visited array between
    calls.  Returns ``(cut_a, cut_b, cluster_size)``.
    """
    n = spins_a.shape[0]
    count = 0
    for i in range(n):
        if spins_a[i] != spins_b[i]:
            count += 1
    if count == 0:
        return cut_a, cut_b, 0
    pick = int(u * count)
    if pick >= count:
        pick = count - 1
    seed = -1
    for i in range(n):
        if spins_a[i] != spins_b[i]:
            if pick == 0:
                seed = i
                break
            pick -= 1

    top = 0
    stack[top] = seed
    top += 1
    mark[seed] = stamp
    size = 0
    while top > 0:
        top -= 1
        i = stack[top]
        for k in range(offsets[i], offsets[i + 1]):
            j = neighbors[k]
            if mark[j] != stamp and spins_a[j] != spins_b[j]:
                mark[j] = stamp
                stack[top] = j
                top += 1
        # flipping i in both replicas keeps it in the disagreement set
        cut_a += spins_a[i] * field_a[i]
        flip(offsets, neighbors, weights, spins_a, field_a, i)
        cut_b += spins_b[i] * field_b[i]
        flip(offsets, neighbors, weights, spins_b, field_b, i)
        size += 1
    return cut_a, cut_b, size


@njit(cache=True, nogil=True)
def attempt_swaps(chain_at, betas, cuts, total_weight, uniforms, parity):
    """Replica-exchange step on one ladder.

    ``chain_at[t]`` is the chain sitting at temperature slot ``t``.  Pairs
    ``(t, t + 1)`` with ``t % 2 == parity`` are proposed; the swap is taken
    with probability ``min(1, exp(dbeta * dH))`` where ``dbeta = b_t - b_t+1``
    and ``dH = H(chain at t) - H(chain at t+1)``.  Only the labels move.
    Returns the number of accepted swaps.
    """
    accepted = 0
    for t in range(parity, betas.shape[0] - 1, 2):
        a = chain_at[t]
        b = chain_at[t + 1]
        h_a = total_weight - 2 * cuts[a]
        h_b = total_weight - 2 * cuts[b]
        x = (betas[t] - betas[t + 1]) * (h_a - h_b)
        if x >= 0.0 or uniforms[t] < math.exp(x):
            chain_at[t] = b
            chain_at[t + 1] = a
            accepted += 1
    return accepted


@njit(cache=True, nogil=True)
def tempering_block(
    offsets, neighbors, weights, total_weight,
    spins, field, cuts, chain_at, betas,
    sweep_uniforms, swap_uniforms, icm_uniforms,
    first_round, icm_period, use_icm,
    stack, mark, stamp,
    best_spins, best_cut, best_round,
):
    """Run ``sweep_uniforms.shape[0]`` PT rounds.

    ``chain_at`` has one row per ladder (1 for plain PT, 2 for PT+ICM).
    Each round: one Metropolis sweep per chain at its current temperature,
    an ICM move between the two ladders at every temperature (PT+ICM only,
    every ``icm_period`` rounds), then exchange attempts on alternating
    even/odd pairs.  Returns ``(best_cut, best_round, stamp, swaps, icm_sites)``.
    """
    n_rounds = sweep_uniforms.shape[0]
    n_ladders, n_temps = chain_at.shape
    swaps = 0
    icm_sites = 0
    for r in range(n_rounds):
        rnd = first_round + r
        for ladder in range(n_ladders):
            for t in range(n_temps):
                c = chain_at[ladder, t]
                cuts[c] = metropolis_sweep(
                    offsets, neighbors, weights, spins[c], field[c], cuts[c],
                    sweep_uniforms[r, c], betas[t],
                )
        if use_icm and rnd % icm_period == 0:
            for t in range(n_temps):
                a = chain_at[0, t]
                b = chain_at[1, t]
                stamp += 1
                ca, cb, size = icm(
                    offsets, neighbors, weights,
                    spins[a], field[a], cuts[a], spins[b], field[b], cuts[b],
                    icm_uniforms[r, t], stack, mark, stamp,
                )
                cuts[a] = ca
                cuts[b] = cb
                icm_sites += size
        parity = rnd % 2
        for ladder in range(n_ladders):
            swaps += attempt_swaps(
                chain_at[ladder], betas, cuts, total_weight, swap_uniforms[r, ladder], parity
            )
        top = 0
        for c in range(cuts.shape[0]):
            if cuts[c] > cuts[top]:
                top = c
        if cuts[top] > best_cut:
            best_cut = cuts[top]
            best_spins[:] = spins[top]
            best_round = rnd + 1
    return best_cut, best_round, stamp, swaps, icm_sites


def csr(inst):
    adj = inst.adjacency
    return adj.offsets, adj.neighbors, adj.weights


def new_mark(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.int64)
