"""Baseline heuristics for sparse MaxCut and the trial harness around them."""

from gsetbench.solvers.annealing import anneal, calibrate_t_hot, schedule, simulated_annealing
from gsetbench.solvers.local_search import local_search, local_search_trial
from gsetbench.solvers.params import InvalidParamsError, SolverKind, SolverParams, read_config
from gsetbench.solvers.records import TrialRecord
from gsetbench.solvers.tempering import Ensemble, icm_move, parallel_tempering
from gsetbench.solvers.trials import BenchRecord, CertificationError, run_trials, solve

__all__ = [
    "BenchRecord",
    "CertificationError",
    "Ensemble",
    "InvalidParamsError",
    "SolverKind",
    "SolverParams",
    "TrialRecord",
    "anneal",
    "calibrate_t_hot",
    "icm_move",
    "local_search",
    "local_search_trial",
    "parallel_tempering",
    "read_config",
    "run_trials",
    "schedule",
    "simulated_annealing",
    "solve",
]
