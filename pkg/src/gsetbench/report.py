"""Self-contained benchmark reports: JSON (canonical) and a flat CSV row.

A report stores every per-trial record, so the aggregate fields can be
recomputed from it.  Wall-clock values (``t_trial_mean``, ``ttt``, per-trial
``wall_time``) and ``created`` are the only fields that change between two
identical invocations; :func:`stable_view` drops them for comparisons.
"""

from __future__ import annotations

import csv
import dataclasses
import datetime as _dt
import io
import json
import math
from dataclasses import dataclass, field

from gsetbench import __version__, registry
from gsetbench import metrics as _m
from gsetbench import rng as _rng
from gsetbench.instances import ProblemInstance
from gsetbench.solvers.trials import BenchRecord
from gsetbench.verify import HexSolution, decode_hex_solution, encode_hex_solution

SCHEMA_VERSION = 1
TIME_DEPENDENT = ("created", "t_trial_mean", "ttt", "energy_to_target_j")


class ReportError(ValueError):
    pass


@dataclass
class TrialEntry:
    trial_index: int
    seed: int
    best_value: int
    best_config: str  # hex, variable 1 first
    sweeps_executed: int
    sweep_at_best: int
    wall_time: float


@dataclass
class BenchReport:
    instance: str
    n: int
    m: int
    params: dict
    num_trials: int
    master_seed: int
    workers: int
    target: int | None
    successes: int | None
    p_s: float | None
    t_trial_mean: float
    sweeps_per_run: int
    best_value_found: int
    best_trial: int
    best_known: int | None
    quality: float | None
    r: float | None
    ttt: float | None
    sweeps_to_target: float | None
    ttt_unreachable: bool
    trials: list[TrialEntry]
    reference: dict = field(default_factory=dict)
    energy_to_target_j: float | None = None
    power_w: float | None = None
    rng: str = _rng.ALGORITHM
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    created: str = ""

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> BenchReport:
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ReportError(f"unsupported report schema_version {version!r} (expected {SCHEMA_VERSION})")
        names = {f.name for f in dataclasses.fields(cls)}
        missing = {f.name for f in dataclasses.fields(cls) if f.default is dataclasses.MISSING
                   and f.default_factory is dataclasses.MISSING} - set(data)
        if missing:
            raise ReportError(f"report lacks field(s): {', '.join(sorted(missing))}")
        unknown = set(data) - names
        if unknown:
            raise ReportError(f"unknown report field(s): {', '.join(sorted(unknown))}")
        kwargs = dict(data)
        kwargs["trials"] = [TrialEntry(**t) for t in data["trials"]]
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> BenchReport:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ReportError(f"report is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ReportError("report must be a JSON object")
        return cls.from_dict(data)

    def configs(self):
        """Decoded best configuration of every trial."""
        return [decode_hex_solution(HexSolution(t.best_config, self.n)) for t in self.trials]

    def summary_line(self) -> str:
        parts = [f"{self.instance}", f"solver={self.params['kind']}", f"trials={self.num_trials}",
                 f"best={self.best_value_found}"]
        if self.quality is not None:
            parts.append(f"quality={_m.format_quality(self.quality)}")
        if self.target is not None:
            parts.append(f"target={self.target} P_s={self.p_s:.2f}")
            if self.ttt_unreachable:
                parts.append("TTT=unreachable")
            else:
                parts.append(f"TTT={self.ttt:.4g}s sweeps-to-target={self.sweeps_to_target:.4g}")
        parts.append(f"t_trial={self.t_trial_mean:.4g}s")
        return " ".join(parts)


def _aggregate(target, trials, num_trials, sweeps_per_run, best_known, power_w):
    """Derived fields, from per-trial values only."""
    out = {}
    values = [t.best_value for t in trials]
    walls = [t.wall_time for t in trials]
    out["t_trial_mean"] = math.fsum(walls) / len(walls)
    best = max(trials, key=lambda t: (t.best_value, -t.trial_index))
    out["best_value_found"] = best.best_value
    out["best_trial"] = best.trial_index
    out["quality"] = None if not best_known else _m.solution_quality(best.best_value, best_known)
    out.update(successes=None, p_s=None, r=None, ttt=None, sweeps_to_target=None,
               ttt_unreachable=False, energy_to_target_j=None)
    if target is not None:
        successes = sum(v >= target for v in values)
        p_s = successes / num_trials
        out.update(successes=successes, p_s=p_s)
        if successes == 0:
            out["ttt_unreachable"] = True
        else:
            r = _m.repetitions(p_s)
            out.update(r=r, ttt=out["t_trial_mean"] * r, sweeps_to_target=sweeps_per_run * r)
            if power_w is not None:
                out["energy_to_target_j"] = _m.energy_to_target(out["ttt"], power_w)
    return out


def _reference(instance_id: str) -> dict:
    ref = {}
    for name, table in (("sbm_vs_cosm", registry.SPEEDUP_TABLE), ("cosm_best", registry.BEST_TABLE),
                        ("bls", registry.BLS_TABLE)):
        for row in table:
            if row.id == instance_id.upper():
                ref[name] = dataclasses.asdict(row)
    return ref


def build_report(
    bench: BenchRecord,
    inst: ProblemInstance,
    workers: int,
    power_w: float | None = None,
    created: str | None = None,
) -> BenchReport:
    trials = [
        TrialEntry(r.trial_index, r.seed, r.best_value, encode_hex_solution(r.best_config),
                   r.sweeps_executed, r.sweep_at_best, r.wall_time)
        for r in bench.records
    ]
    best_known = registry.best_known(inst.id)
    agg = _aggregate(bench.target, trials, bench.num_trials, bench.sweeps_per_run, best_known, power_w)
    if created is None:
        created = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return BenchReport(
        instance=inst.id, n=inst.n, m=inst.m, params=bench.params.to_dict(),
        num_trials=bench.num_trials, master_seed=bench.master_seed, workers=workers,
        target=bench.target, sweeps_per_run=bench.sweeps_per_run, best_known=best_known,
        trials=trials, reference=_reference(inst.id), power_w=power_w, created=created, **agg,
    )


def recompute(report: BenchReport) -> dict:
    """Aggregate fields rebuilt from the per-trial records."""
    return _aggregate(report.target, report.trials, report.num_trials, report.sweeps_per_run,
                      report.best_known, report.power_w)


def check_consistency(report: BenchReport) -> list[str]:
    """Names of aggregate fields that disagree with their recomputation."""
    problems = []
    if len(report.trials) != report.num_trials:
        problems.append("num_trials")
    for key, value in recompute(report).items():
        if getattr(report, key) != value:
            problems.append(key)
    return problems


def stable_view(report: BenchReport | dict) -> dict:
    """The report without timestamps and wall-clock derived values."""
    data = report.to_dict() if isinstance(report, BenchReport) else json.loads(json.dumps(report))
    for key in TIME_DEPENDENT:
        data.pop(key, None)
    for t in data["trials"]:
        t.pop("wall_time", None)
    return data


CSV_FIELDS = (
    "instance", "n", "m", "solver", "sweeps_per_run", "num_trials", "master_seed", "target",
    "successes", "p_s", "t_trial_mean", "r", "ttt", "sweeps_to_target", "best_value_found",
    "best_known", "quality_pct", "tool_version", "created",
)


def csv_row(report: BenchReport) -> dict:
    row = {k: getattr(report, k, None) for k in CSV_FIELDS}
    row["solver"] = report.params["kind"]
    row["quality_pct"] = None if report.quality is None else round(100 * report.quality, 2)
    if report.ttt_unreachable:
        row["ttt"] = row["sweeps_to_target"] = row["r"] = "unreachable"
    return row


def to_csv(reports, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    if header:
        writer.writeheader()
    for rep in reports:
        writer.writerow({k: "" if v is None else v for k, v in csv_row(rep).items()})
    return buf.getvalue()


def read_report(path) -> BenchReport:
    with open(path, encoding="utf-8") as fh:
        return BenchReport.from_json(fh.read())
