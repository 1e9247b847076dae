"""``gsetbench`` command line.

Exit status: 0 success, 1 verification mismatch, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from gsetbench import __version__, registry
from gsetbench import metrics as _m
from gsetbench.instances import CACHE_ENV, cached_checksum, instance_stats, load_instance
from gsetbench.report import build_report, check_consistency, read_report, to_csv
from gsetbench.solvers import SolverParams, read_config, run_trials, solve
from gsetbench.verify import (
    bundled_solution,
    certify,
    decode_hex_solution,
    encode_hex_solution,
    format_solution_file,
    read_solution_file,
)

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2

# CLI flag -> SolverParams field
_SOLVER_FLAGS = {
    "solver": "kind",
    "sweeps": "sweeps_per_run",
    "restarts": "restarts",
    "t_hot": "sa_t_hot",
    "t_cold": "sa_t_cold",
    "factor": "sa_factor",
    "replicas": "pt_replicas",
    "t_min": "pt_t_min",
    "t_max": "pt_t_max",
    "betas": "pt_betas",
    "icm_period": "icm_period",
}


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cache-dir", help=f"instance cache (default: ${CACHE_ENV} or ~/.cache/gsetbench)")
    p.add_argument("--offline", action="store_true", help="never download; fail on a cache miss")
    p.add_argument("--url", help="mirror base URL or template with {id}")
    p.add_argument("--timeout", type=float, default=60.0)


def _solver_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("solver")
    g.add_argument("--config", help="key = value file; flags override it")
    g.add_argument("--solver", help="ls, sa, pt or pticm (default sa)")
    g.add_argument("--sweeps", type=int, help="sweeps (PT: rounds) per run")
    g.add_argument("--restarts", type=int)
    g.add_argument("--t-hot", type=float, help="SA start temperature (default: calibrated)")
    g.add_argument("--t-cold", type=float)
    g.add_argument("--factor", type=float, help="SA per-sweep cooling factor")
    g.add_argument("--replicas", type=int)
    g.add_argument("--t-min", type=float)
    g.add_argument("--t-max", type=float)
    g.add_argument("--betas", help="explicit inverse temperatures, comma separated")
    g.add_argument("--icm-period", type=int)


def _load(args, ref: str):
    return load_instance(ref, cache_dir=args.cache_dir, offline=args.offline, url=args.url, timeout=args.timeout)


def _params(args, instance_id: str) -> SolverParams:
    merged: dict = {}
    if args.config:
        try:
            merged.update(read_config(Path(args.config).read_text()))
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
    for flag, key in _SOLVER_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            merged[key] = value
    if "sweeps_per_run" not in merged:
        default = registry.default_sweeps_per_run(instance_id)
        if default is not None:
            merged["sweeps_per_run"] = default
    return SolverParams.from_dict(merged)


def cmd_fetch(args) -> int:
    status = EXIT_OK
    for ref in args.ids:
        try:
            inst = _load(args, ref)
        except (KeyError, OSError, ValueError) as exc:
            _err(str(exc))
            status = EXIT_ERROR
            continue
        digest = cached_checksum(inst.id, args.cache_dir) or "-"
        print(f"{inst.id} n={inst.n} m={inst.m} sha256={digest}")
    return status


def cmd_info(args) -> int:
    meta = registry.REGISTRY.get(args.instance.upper())
    if meta is not None:
        print(f"{meta.id}: n={meta.n} m={meta.m} type={meta.problem_type.value}")
        print(f"  best known {meta.best_known} ({meta.best_known_source})")
        spr = registry.default_sweeps_per_run(meta.id)
        if spr is not None:
            print(f"  default sweeps per run {spr}")
    try:
        inst = _load(args, args.instance)
    except (KeyError, OSError, ValueError) as exc:
        if meta is None:
            _err(str(exc))
            return EXIT_ERROR
        print(f"  graph not available: {exc}")
        return EXIT_OK
    s = instance_stats(inst)
    hist = " ".join(f"{w}:{c}" for w, c in sorted(s.weight_histogram.items()))
    print(f"parsed {inst.id}: n={s.n} m={s.m} total_weight={s.total_weight}")
    print(f"  degree min={s.min_degree} max={s.max_degree} mean={s.mean_degree:.3f}")
    print(f"  weights {hist}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst = _load(args, args.instance)
        if args.solution in (None, "bundled"):
            sol = bundled_solution(inst.id)
        else:
            sol = read_solution_file(args.solution)
        cfg = decode_hex_solution(sol.solution(inst.n))
    except (KeyError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    claimed = args.claimed if args.claimed is not None else sol.claimed
    rep = certify(inst, cfg, claimed)
    line = f"cut={rep.cut}"
    if rep.quality is not None:
        line += f" quality={_m.format_quality(rep.quality)}"
    if claimed is not None:
        line += f" {rep.verdict}" if rep.matches_claim else f" {rep.verdict} (claimed {claimed})"
    print(line)
    return EXIT_MISMATCH if rep.matches_claim is False else EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args, args.instance)
    params = _params(args, inst.id)
    rec = solve(inst, params, args.seed)
    best = registry.best_known(inst.id)
    line = f"{inst.id} solver={params.kind.value} cut={rec.best_value}"
    if best:
        line += f" quality={_m.format_quality(_m.solution_quality(rec.best_value, best))}"
    print(line + f" sweeps={rec.sweeps_executed} at_best={rec.sweep_at_best} time={rec.wall_time:.3f}s")
    if args.out:
        Path(args.out).write_text(format_solution_file(
            rec.best_config, instance=inst.id, claimed=rec.best_value,
            comment=f"{params.kind.value} seed={args.seed}",
        ))
    elif args.print_hex:
        print(encode_hex_solution(rec.best_config))
    return EXIT_OK


def cmd_bench(args) -> int:
    inst = _load(args, args.instance)
    params = _params(args, inst.id)
    if args.trials < 1 or args.threads < 1:
        raise UsageError("--trials and --threads must be >= 1")
    bench = run_trials(inst, params, args.trials, args.target, args.threads, args.seed)
    report = build_report(bench, inst, args.threads, power_w=args.power)
    if args.out:
        Path(args.out).write_text(report.to_json())
    if args.csv:
        path = Path(args.csv)
        new = not path.exists() or path.stat().st_size == 0
        with path.open("a", encoding="utf-8") as fh:
            fh.write(to_csv([report], header=new))
    print(report.summary_line())
    return EXIT_OK


def cmd_project_bls(args) -> int:
    proj = _m.bls_projection(args.avg_time_per_success, args.successes, args.runs)
    print(f"p_s={proj.p_s:.4g} per_run={proj.avg_time_per_run:.6g}s projected_ttt={proj.projected_ttt:.6g}s")
    if args.cosm_ttt is not None:
        print(f"speedup={_m.speedup(proj.projected_ttt, args.cosm_ttt):.4g}")
    return EXIT_OK


def cmd_report(args) -> int:
    reports = [read_report(p) for p in args.reports]
    status = EXIT_OK
    for path, rep in zip(args.reports, reports):
        bad = check_consistency(rep)
        if bad:
            _err(f"{path}: aggregate field(s) disagree with the trial records: {', '.join(bad)}")
            status = EXIT_ERROR
    text = to_csv(reports)
    if args.csv:
        Path(args.csv).write_text(text)
    if args.format == "csv":
        sys.stdout.write(text)
    else:
        for rep in reports:
            print(rep.summary_line())
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsetbench", description="Sparse Ising / MaxCut workbench for Gset")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch", help="download and cache instances")
    p.add_argument("ids", nargs="+")
    _instance_args(p)
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("info", help="registry data and graph statistics")
    p.add_argument("instance")
    _instance_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("verify", help="certify a hex solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution", nargs="?", help="solution file, or 'bundled' (default)")
    p.add_argument("--claimed", type=int)
    _instance_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="one trial of a solver")
    p.add_argument("instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the best configuration as a solution file")
    p.add_argument("--print-hex", action="store_true")
    _instance_args(p)
    _solver_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="independent trials, P_s and time-to-target")
    p.add_argument("instance")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--threads", type=int, default=6)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--target", type=int, help="cut value counted as success")
    p.add_argument("--power", type=float, help="watts, for energy-to-target")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="append a CSV row here")
    _instance_args(p)
    _solver_args(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("project-bls", help="projected TTT from per-success timings")
    p.add_argument("--avg-time-per-success", type=float, required=True)
    p.add_argument("--successes", type=int, required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--cosm-ttt", type=float, help="print the speedup against this TTT")
    p.set_defaults(func=cmd_project_bls)

    p = sub.add_parser("report", help="re-render JSON reports as a table or CSV")
    p.add_argument("reports", nargs="+")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument("--csv", help="also write CSV here")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, KeyError, OSError, ValueError) as exc:
        # parse, params, report and fetch errors all land here
        _err(str(exc))
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
