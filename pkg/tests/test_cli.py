import json

import pytest

from conftest import cached_gset
from gsetbench.cli import main
from gsetbench.instances import serialize_gset
from gsetbench.report import read_report, stable_view
from oracles import edges_of, torus_maxcut


@pytest.fixture
def grid_file(tmp_path, grid8):
    path = tmp_path / "torus8.txt"
    path.write_text(serialize_gset(grid8))
    return str(path)


@pytest.fixture
def grid8_opt(grid8):
    return torus_maxcut(8, 8, edges_of(grid8))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_version(capsys):
    assert run(capsys, "--version")[0] == 0


def test_no_command_is_usage_error(capsys):
    assert run(capsys)[0] == 2


def test_fetch_unknown_id(capsys, tmp_path):
    code, _, err = run(capsys, "fetch", "G99", "--cache-dir", str(tmp_path))
    assert code == 2 and "unknown instance id 'G99'" in err


def test_fetch_offline_miss(capsys, tmp_path):
    code, _, err = run(capsys, "fetch", "G72", "--offline", "--cache-dir", str(tmp_path))
    assert code == 2 and "not cached" in err


def test_fetch_uses_cache(capsys, tmp_path, monkeypatch):
    from test_instances import _fake_gset
    from gsetbench import registry

    calls = []

    def download(url, timeout):
        calls.append(url)
        return _fake_gset(registry.lookup("G72"))

    monkeypatch.setattr("gsetbench.instances._download", download)
    code, first, _ = run(capsys, "fetch", "G72", "--cache-dir", str(tmp_path))
    assert code == 0 and first.startswith("G72 n=10000 m=20000 sha256=")
    code, second, _ = run(capsys, "fetch", "G72", "--cache-dir", str(tmp_path), "--offline")
    assert code == 0 and second == first and len(calls) == 1


def test_info_local_file(capsys, grid_file):
    code, out, _ = run(capsys, "info", grid_file)
    assert code == 0
    assert "n=64 m=128" in out and "degree min=4 max=4" in out


def test_info_registry_only(capsys, tmp_path):
    code, out, _ = run(capsys, "info", "G81", "--offline", "--cache-dir", str(tmp_path))
    assert code == 0 and "n=20000 m=40000" in out and "14056" in out


def test_solve_then_verify(capsys, grid_file, tmp_path):
    sol = tmp_path / "s.hex"
    code, out, _ = run(capsys, "solve", grid_file, "--solver", "pt", "--sweeps", "200", "--replicas", "8", "--out", str(sol))
    assert code == 0
    cut = int(out.split("cut=")[1].split()[0])
    code, out, _ = run(capsys, "verify", grid_file, str(sol))
    assert code == 0 and out.strip() == f"cut={cut} MATCH"
    code, out, _ = run(capsys, "verify", grid_file, str(sol), "--claimed", str(cut + 1))
    assert code == 1 and "MISMATCH" in out


def test_verify_bad_hex(capsys, grid_file, tmp_path):
    bad = tmp_path / "bad.hex"
    bad.write_text("XYZ\n")
    assert run(capsys, "verify", grid_file, str(bad))[0] == 2
    short = tmp_path / "short.hex"
    short.write_text("FF\n")
    code, _, err = run(capsys, "verify", grid_file, str(short))
    assert code == 2 and "fewer than n=64" in err


def test_bench_writes_report_and_csv(capsys, grid_file, tmp_path, grid8_opt):
    out_json, out_csv = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = run(
        capsys, "bench", grid_file, "--solver", "sa", "--sweeps", "1000", "--trials", "25",
        "--threads", "4", "--seed", "3", "--target", str(grid8_opt),
        "--out", str(out_json), "--csv", str(out_csv),
    )
    assert code == 0 and "P_s=" in out and "TTT=" in out
    rep = read_report(out_json)
    assert rep.p_s > 0 and rep.ttt is not None and rep.sweeps_to_target is not None
    assert out_csv.read_text().count("\n") == 2


def test_bench_twice_same_json_apart_from_timings(capsys, grid_file, tmp_path):
    paths = []
    for k, threads in enumerate(("1", "6")):
        path = tmp_path / f"r{k}.json"
        argv = ["bench", grid_file, "--solver", "pticm", "--sweeps", "50", "--replicas", "6",
                "--trials", "8", "--threads", threads, "--seed", "42", "--target", "40", "--out", str(path)]
        assert run(capsys, *argv)[0] == 0
        paths.append(path)
    a, b = (json.loads(p.read_text()) for p in paths)
    a["workers"] = b["workers"]
    assert stable_view(a) == stable_view(b)


def test_bench_zero_successes_still_reports(capsys, grid_file, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "bench", grid_file, "--sweeps", "20", "--trials", "3", "--target", "999", "--out", str(path))
    assert code == 0 and "TTT=unreachable" in out
    assert read_report(path).ttt_unreachable


def test_bench_invalid_params(capsys, grid_file):
    assert run(capsys, "bench", grid_file, "--solver", "annealer")[0] == 2
    assert run(capsys, "bench", grid_file, "--t-hot", "0.01", "--t-cold", "0.05")[0] == 2
    assert run(capsys, "bench", grid_file, "--trials", "0")[0] == 2


def test_config_file_merged_under_flags(capsys, grid_file, tmp_path):
    cfg = tmp_path / "solver.cfg"
    cfg.write_text("kind = pt\nsweeps_per_run = 30\npt_replicas = 4\n")
    path = tmp_path / "r.json"
    assert run(capsys, "bench", grid_file, "--config", str(cfg), "--sweeps", "40", "--trials", "2", "--out", str(path))[0] == 0
    params = read_report(path).params
    assert (params["kind"], params["sweeps_per_run"], params["pt_replicas"]) == ("pt", 40, 4)


def test_project_bls(capsys):
    code, out, _ = run(capsys, "project-bls", "--avg-time-per-success", "4316", "--successes", "2", "--runs", "20")
    assert code == 0
    assert float(out.split("projected_ttt=")[1].rstrip("s\n")) == pytest.approx(18865, rel=0.005)
    code, out, _ = run(capsys, "project-bls", "--avg-time-per-success", "20422", "--successes", "1", "--runs", "20")
    assert "per_run=1021.1s" in out
    assert float(out.split("projected_ttt=")[1].rstrip("s\n")) == pytest.approx(91676, rel=0.005)
    code, out, _ = run(capsys, "project-bls", "--avg-time-per-success", "100", "--successes", "20", "--runs", "20")
    assert "projected_ttt=100s" in out
    assert run(capsys, "project-bls", "--avg-time-per-success", "1", "--successes", "0", "--runs", "20")[0] == 2


def test_report_command(capsys, grid_file, tmp_path):
    path = tmp_path / "r.json"
    run(capsys, "bench", grid_file, "--sweeps", "50", "--trials", "3", "--target", "30", "--out", str(path))
    code, out, _ = run(capsys, "report", str(path), "--format", "csv")
    assert code == 0 and out.startswith("instance,")
    data = json.loads(path.read_text())
    data["successes"] += 1
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "report", str(path))
    assert code == 2 and "successes" in err


@pytest.mark.parametrize("instance_id, value", [("G72", 7008), ("G77", 9940)])
def test_verify_bundled_records(capsys, instance_id, value):
    if cached_gset(instance_id) is None:
        pytest.skip(f"{instance_id} not cached")
    code, out, _ = run(capsys, "verify", instance_id, "--offline")
    assert code == 0 and out.startswith(f"cut={value}")


def test_verify_wrong_asset_is_a_data_error(capsys):
    if cached_gset("G72") is None:
        pytest.skip("G72 not cached")
    from gsetbench.verify import bundled_path

    code, _, err = run(capsys, "verify", "G72", str(bundled_path("G77")), "--offline")
    assert code == 2 and "n=" in err
