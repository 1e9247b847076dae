from __future__ import annotations

import os
from pathlib import Path

import pytest

from gsetbench.instances import CacheMissError, ProblemInstance, default_cache_dir, load_instance
from oracles import random_graph_edges, toroidal_grid_edges

GSET_IDS = ("G65", "G66", "G67", "G70", "G72", "G77", "G81")

# PASS/FAIL lines from the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def gset_cache_dir() -> Path:
    return default_cache_dir()


def cached_gset(instance_id: str) -> ProblemInstance | None:
    """The cached instance, or None when it has not been fetched."""
    try:
        return load_instance(instance_id, cache_dir=gset_cache_dir(), offline=True)
    except CacheMissError:
        return None


def require_gset(instance_id: str) -> ProblemInstance:
    inst = cached_gset(instance_id)
    if inst is None:
        pytest.skip(
            f"{instance_id} not cached in {gset_cache_dir()}; run `gsetbench fetch {instance_id}` "
            f"or set GSETBENCH_CACHE"
        )
    return inst


def grid_instance(rows: int, cols: int, seed: int) -> ProblemInstance:
    return ProblemInstance(f"torus{rows}x{cols}s{seed}", rows * cols, toroidal_grid_edges(rows, cols, seed))


@pytest.fixture(scope="session")
def grid8() -> ProblemInstance:
    return grid_instance(8, 8, seed=2023)


@pytest.fixture(scope="session")
def grid16() -> ProblemInstance:
    return grid_instance(16, 16, seed=7)


@pytest.fixture
def edge1() -> ProblemInstance:
    return ProblemInstance("one", 2, [(1, 2, 1)])


@pytest.fixture
def triangle() -> ProblemInstance:
    return ProblemInstance("tri", 3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])


def small_random(n: int, seed: int) -> ProblemInstance:
    return ProblemInstance(f"rand{n}s{seed}", n, random_graph_edges(n, 0.4, seed))


@pytest.fixture(autouse=True)
def _no_network(monkeypatch):
    """Tests never download; a fetch attempt fails immediately."""
    monkeypatch.setenv("GSETBENCH_URL", os.environ.get("GSETBENCH_TEST_URL", "http://127.0.0.1:9/"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
