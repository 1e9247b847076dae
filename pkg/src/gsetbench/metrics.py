"""Benchmark arithmetic: repetitions, time/sweeps-to-target, quality, speedup,
energy-to-target and the projection of per-success timings to a TTT.

All functions are pure double-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

CONFIDENCE = 0.99
# success probabilities this close to 1 are treated as certain
P_ONE_EPS = 1e-12


class UnreachableTargetError(ValueError):
    """No trial reached the target, so TTT is undefined."""


def repetitions(p_s: float) -> float:
    """Runs needed to hit the target at least once with 99% probability.

    >>> repetitions(0.99)
    1.0
    >>> round(repetitions(0.10), 2)
    43.71
    """
    if not 0.0 <= p_s <= 1.0 or math.isnan(p_s):
        raise ValueError(f"success probability must lie in [0, 1], got {p_s}")
    if p_s == 0.0:
        raise UnreachableTargetError("no successes; TTT undefined")
    if p_s >= 1.0 - P_ONE_EPS:
        return 1.0
    return max(1.0, math.log(1.0 - CONFIDENCE) / math.log(1.0 - p_s))


def time_to_target(t_trial: float, p_s: float) -> float:
    if not t_trial > 0:
        raise ValueError(f"t_trial must be positive, got {t_trial}")
    return t_trial * repetitions(p_s)


def sweeps_to_target(sweeps_per_run: float, p_s: float) -> float:
    if sweeps_per_run < 1:
        raise ValueError(f"sweeps_per_run must be >= 1, got {sweeps_per_run}")
    return sweeps_per_run * repetitions(p_s)


def solution_quality(value: float, best_known: float) -> float:
    """Ratio of an attained value to the best-known one (1.0 means matched)."""
    if not best_known > 0:
        raise ValueError(f"best_known must be positive, got {best_known}")
    return value / best_known


def format_quality(q: float) -> str:
    return f"{100.0 * q:.2f}%"


def speedup(ttt_reference: float, ttt_new: float) -> float:
    if not (ttt_reference > 0 and ttt_new > 0):
        raise ValueError("TTT values must be positive")
    return ttt_reference / ttt_new


def energy_to_target(ttt: float, power: float) -> float:
    """Joules spent reaching the target at a constant power draw (W)."""
    if not (ttt > 0 and power > 0):
        raise ValueError("ttt and power must be positive")
    return ttt * power


@dataclass(frozen=True)
class TttEstimate:
    target: int | None
    p_s: float
    r: float
    t_trial: float
    ttt: float
    sweeps_per_run: int | None = None
    sweeps_to_target: float | None = None


def estimate(target: int | None, p_s: float, t_trial: float, sweeps_per_run: int | None = None) -> TttEstimate:
    r = repetitions(p_s)
    return TttEstimate(
        target=target,
        p_s=p_s,
        r=r,
        t_trial=t_trial,
        ttt=t_trial * r,
        sweeps_per_run=sweeps_per_run,
        sweeps_to_target=None if sweeps_per_run is None else sweeps_per_run * r,
    )


@dataclass(frozen=True)
class BlsProjection:
    p_s: float
    total_time: float
    avg_time_per_run: float
    projected_ttt: float


def bls_projection(avg_time_per_success: float, successes: int, runs: int) -> BlsProjection:
    """Project a TTT from runs that only report mean time per success.

    Total time is taken as mean time per success times the number of
    successes, spread evenly over all runs.
    """
    if successes <= 0:
        raise UnreachableTargetError("no successes; projection undefined")
    if successes > runs:
        raise ValueError(f"successes ({successes}) exceed runs ({runs})")
    p_s = successes / runs
    total = avg_time_per_success * successes
    per_run = total / runs
    return BlsProjection(p_s, total, per_run, per_run * repetitions(p_s))
