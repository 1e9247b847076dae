import pytest

from gsetbench import rng
from gsetbench.solvers import SolverParams, run_trials, solve

PARAMS = SolverParams(kind="sa", sweeps_per_run=100)


def test_low_target_always_met(grid8):
    bench = run_trials(grid8, PARAMS, 100, target=-grid8.m, workers=4, master_seed=1)
    assert bench.successes == 100 and bench.p_s == 1.0


def test_unreachable_target(grid8):
    positive = sum(w for _, _, w in grid8.edges if w > 0)
    bench = run_trials(grid8, PARAMS, 20, target=positive + 1, workers=2)
    assert bench.p_s == 0.0


def test_no_target_no_success_rate(grid8):
    bench = run_trials(grid8, PARAMS, 3)
    assert bench.successes is None and bench.p_s is None
    assert bench.t_trial > 0


@pytest.mark.parametrize("kind", ["ls", "sa", "pt", "pticm"])
def test_worker_count_does_not_change_records(grid8, kind):
    params = SolverParams(kind=kind, sweeps_per_run=150, pt_replicas=6)
    one = run_trials(grid8, params, 24, target=40, workers=1, master_seed=77)
    six = run_trials(grid8, params, 24, target=40, workers=6, master_seed=77)
    assert [r.trial_index for r in six.records] == list(range(24))
    assert all(a.same_outcome(b) for a, b in zip(one.records, six.records))
    assert one.p_s == six.p_s


def test_trial_seeds_follow_the_master_seed(grid8):
    bench = run_trials(grid8, PARAMS, 5, master_seed=9)
    assert [r.seed for r in bench.records] == [rng.trial_seed(9, t) for t in range(5)]
    again = solve(grid8, PARAMS, rng.trial_seed(9, 3), 3)
    assert again.same_outcome(bench.records[3])


def test_best_prefers_lowest_trial_on_ties(grid8):
    bench = run_trials(grid8, SolverParams(kind="sa", sweeps_per_run=2000), 8, master_seed=3)
    top = max(r.best_value for r in bench.records)
    assert bench.best.trial_index == min(r.trial_index for r in bench.records if r.best_value == top)


@pytest.mark.parametrize("kw", [dict(num_trials=0), dict(workers=0)])
def test_bad_arguments(grid8, kw):
    args = dict(num_trials=1, workers=1) | kw
    with pytest.raises(ValueError):
        run_trials(grid8, PARAMS, **args)
