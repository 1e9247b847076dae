import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import require_gset, small_random
from gsetbench.model import (
    IncrementalState,
    bits_to_spins,
    cut_value,
    ising_energy,
    random_config,
    spins_to_bits,
)
from oracles import brute_force_maxcut, edges_of, naive_cut, naive_energy


def test_single_edge_objectives(edge1):
    assert cut_value(edge1, [1, -1]) == 1
    assert cut_value(edge1, [1, 1]) == 0
    assert ising_energy(edge1, [1, -1]) == -1
    assert ising_energy(edge1, [1, 1]) == edge1.total_weight


def test_triangle_best_cut_by_enumeration(triangle):
    best = max(cut_value(triangle, [a, b, c]) for a in (1, -1) for b in (1, -1) for c in (1, -1))
    assert best == 2 == brute_force_maxcut(3, edges_of(triangle))[0]


def test_length_mismatch(edge1):
    with pytest.raises(ValueError, match="length"):
        cut_value(edge1, [1, 1, 1])
    with pytest.raises(ValueError, match="length"):
        ising_energy(edge1, [1])


def test_bit_mapping():
    assert bits_to_spins([0, 1]).tolist() == [1, -1]
    assert spins_to_bits([1, -1]).tolist() == [0, 1]


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_cut_energy_identity_and_flip_symmetry(seed):
    inst = small_random(14, seed % 1000)
    s = random_config(inst.n, seed)
    edges = edges_of(inst)
    assert cut_value(inst, s) == naive_cut(edges, s.tolist())
    assert ising_energy(inst, s) == naive_energy(edges, s.tolist())
    assert 2 * cut_value(inst, s) == inst.total_weight - ising_energy(inst, s)
    assert cut_value(inst, -s) == cut_value(inst, s)


def test_flip_gain_examples(edge1):
    assert IncrementalState(edge1, [1, 1]).flip_gain(0) == 1
    assert IncrementalState(edge1, [1, -1]).flip_gain(0) == -1


def test_flip_gain_matches_recompute_on_random_12_vertex_graphs():
    for seed in range(20):
        inst = small_random(12, seed)
        s = random_config(12, seed)
        state = IncrementalState(inst, s)
        base = naive_cut(edges_of(inst), s.tolist())
        for i in range(12):
            t = s.copy()
            t[i] = -t[i]
            assert state.flip_gain(i) == naive_cut(edges_of(inst), t.tolist()) - base
        assert state.is_consistent()


def test_flip_gain_is_pure(grid8):
    state = IncrementalState(grid8, random_config(64, 1))
    before = state.copy()
    state.flip_gain(5)
    assert state == before


def test_index_errors(edge1):
    state = IncrementalState(edge1, [1, 1])
    with pytest.raises(IndexError):
        state.flip_gain(2)
    with pytest.raises(IndexError):
        state.apply_flip(-1)


def test_apply_flip_is_an_involution(grid8):
    state = IncrementalState(grid8, random_config(64, 3))
    original = state.copy()
    state.apply_flip(10).apply_flip(10)
    assert state == original


def test_flip_everything_keeps_cut(grid8):
    state = IncrementalState(grid8, random_config(64, 4))
    cut = state.cut
    for i in range(64):
        state.apply_flip(i)
    assert state.cut == cut
    assert np.array_equal(state.spins, -random_config(64, 4))
    assert state.is_consistent()


@given(st.lists(st.integers(0, 255), max_size=400), st.integers(0, 100))
@settings(max_examples=60, deadline=None)
def test_incremental_state_tracks_recompute(flips, seed):
    from conftest import grid_instance

    inst = grid_instance(16, 16, seed)
    state = IncrementalState(inst, random_config(inst.n, seed))
    for i in flips:
        gain = state.flip_gain(i)
        cut, energy = state.cut, state.energy
        state.apply_flip(i)
        assert state.cut == cut + gain
        assert state.energy == energy - 2 * gain
    assert state.is_consistent()
    assert 2 * state.cut == inst.total_weight - state.energy


def test_random_config_determinism():
    assert np.array_equal(random_config(1000, 9), random_config(1000, 9))
    assert not np.array_equal(random_config(10_000, 1), random_config(10_000, 2))
    assert set(np.unique(random_config(100, 0))) <= {-1, 1}


def test_random_config_is_balanced():
    n = 100_000
    assert abs(random_config(n, 12345).mean()) < 4 / np.sqrt(n)


def test_thousand_flips_on_g67():
    inst = require_gset("G67")
    state = IncrementalState(inst, random_config(inst.n, 0))
    for i in np.random.default_rng(0).integers(0, inst.n, 1000):
        state.apply_flip(int(i))
    assert state.cut == cut_value(inst, state.spins)
