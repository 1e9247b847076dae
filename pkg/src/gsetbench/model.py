"""Spin configurations, MaxCut/Ising objectives and incremental flip updates.

Spins are ``int8`` arrays over {+1, -1}.  Bits map as 0 -> +1 and 1 -> -1.
With ``W`` the total edge weight and ``H = sum w_ij s_i s_j`` the Ising
energy, ``cut = (W - H) / 2`` holds exactly in integer arithmetic.
"""

from __future__ import annotations

import numpy as np

from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance


def bits_to_spins(bits) -> np.ndarray:
    b = np.asarray(bits)
    if b.size and not np.isin(b, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    return (1 - 2 * b.astype(np.int8)).astype(np.int8)


def spins_to_bits(spins) -> np.ndarray:
    return (np.asarray(spins) < 0).astype(np.uint8)


def as_spins(cfg, n: int | None = None) -> np.ndarray:
    s = np.asarray(cfg, dtype=np.int8)
    if s.ndim != 1:
        raise ValueError("a spin configuration must be one-dimensional")
    if n is not None and len(s) != n:
        raise ValueError(f"configuration has length {len(s)}, instance has n={n}")
    if s.size and not (np.abs(s) == 1).all():
        raise ValueError("spins must be +1 or -1")
    return s


def cut_value(inst: ProblemInstance, cfg) -> int:
    s = as_spins(cfg, inst.n)
    crossing = s[inst.u - 1] != s[inst.v - 1]
    return int(inst.w[crossing].sum())


def ising_energy(inst: ProblemInstance, cfg) -> int:
    s = as_spins(cfg, inst.n).astype(np.int64)
    return int((inst.w * s[inst.u - 1] * s[inst.v - 1]).sum())


def local_fields(inst: ProblemInstance, cfg) -> np.ndarray:
    """h_i = sum over neighbours j of w_ij s_j, as int64."""
    s = as_spins(cfg, inst.n).astype(np.int64)
    h = np.zeros(inst.n, dtype=np.int64)
    np.add.at(h, inst.u - 1, inst.w * s[inst.v - 1])
    np.add.at(h, inst.v - 1, inst.w * s[inst.u - 1])
    return h


def random_config(n: int, seed: int, *path: int) -> np.ndarray:
    """Uniform independent spins; ``path`` selects a sub-stream (e.g. a restart)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = _rng.stream(seed, _rng.STREAM_INIT, *path)
    return (1 - 2 * gen.integers(0, 2, size=n, dtype=np.int8)).astype(np.int8)


class IncrementalState:
    """Spins plus cached local fields, cut and energy.

    ``flip_gain(i)`` and ``apply_flip(i)`` take 0-based vertex indices and
    cost O(degree(i)).  A state is owned by one trial and is never shared.
    """

    def __init__(self, inst: ProblemInstance, cfg):
        self.inst = inst
        self.spins = as_spins(cfg, inst.n).copy()
        self.field = local_fields(inst, self.spins)
        self.energy = ising_energy(inst, self.spins)
        self.cut = (inst.total_weight - self.energy) // 2

    def _check(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.inst.n:
            raise IndexError(f"vertex {i} out of range for n={self.inst.n}")
        return i

    def flip_gain(self, i: int) -> int:
        i = self._check(i)
        return int(self.spins[i]) * int(self.field[i])

    def apply_flip(self, i: int) -> IncrementalState:
        i = self._check(i)
        adj = self.inst.adjacency
        old = int(self.spins[i])
        gain = old * int(self.field[i])
        lo, hi = adj.offsets[i], adj.offsets[i + 1]
        self.field[adj.neighbors[lo:hi]] -= 2 * old * adj.weights[lo:hi]
        self.spins[i] = -old
        self.cut += gain
        self.energy -= 2 * gain
        return self

    def copy(self) -> IncrementalState:
        other = object.__new__(IncrementalState)
        other.inst = self.inst
        other.spins = self.spins.copy()
        other.field = self.field.copy()
        other.energy = self.energy
        other.cut = self.cut
        return other

    def is_consistent(self) -> bool:
        """True when every cached quantity matches a from-scratch recomputation."""
        return (
            np.array_equal(self.field, local_fields(self.inst, self.spins))
            and self.energy == ising_energy(self.inst, self.spins)
            and self.cut == cut_value(self.inst, self.spins)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncrementalState):
            return NotImplemented
        return (
            self.inst is other.inst
            and np.array_equal(self.spins, other.spins)
            and np.array_equal(self.field, other.field)
            and self.cut == other.cut
            and self.energy == other.energy
        )

    __hash__ = None  # type: ignore[assignment]
