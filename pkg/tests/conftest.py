import time
from pathlib import Path

import pytest

from hidden_ties import Side, UnipartiteGraph, largest_component, project
from hidden_ties.io import IngestConfig, batch_to_bipartite, parse_csv

DATA = Path(__file__).parent / "data"

K6 = ["FactoryThree", "ANB", "Shijiazhuang", "Remy", "CBF", "Acdhon"]
TRIANGLE_COMPONENT = ["China", "Guilin", "Medipharco"]


def load_bp12(name: str = "bp12.csv"):
    config = IngestConfig(actor_column="Manufacturer", resource_column="Product")
    return batch_to_bipartite(parse_csv((DATA / name).read_bytes(), config))


@pytest.fixture(scope="session")
def bp12():
    return load_bp12()


@pytest.fixture(scope="session")
def r12(bp12):
    return project(bp12, Side.ACTORS)


@pytest.fixture(scope="session")
def r9(r12):
    return largest_component(r12)


@pytest.fixture(scope="session")
def r9_prefixed():
    return largest_component(project(load_bp12("bp12_prefixed.csv"), Side.ACTORS))


def graph_from_labels(edges, isolated=()) -> UnipartiteGraph:
    labels = []
    for u, v in edges:
        for x in (u, v):
            if x not in labels:
                labels.append(x)
    labels += [x for x in isolated if x not in labels]
    idx = {lab: i for i, lab in enumerate(labels)}
    return UnipartiteGraph(tuple(labels), tuple((idx[u], idx[v], 1) for u, v in edges))


# -- acceptance reporting ----------------------------------------------------

SUITE_LIMIT_S = 60.0
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []
_clock: dict[str, float] = {}


def pytest_sessionstart(session):
    _clock["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    _clock["elapsed"] = time.perf_counter() - _clock["start"]
    if _clock["elapsed"] >= SUITE_LIMIT_S and exitstatus == 0:
        session.exitstatus = pytest.ExitCode.TESTS_FAILED


def pytest_terminal_summary(terminalreporter):
    elapsed = _clock.get("elapsed", time.perf_counter() - _clock.get("start", 0.0))
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    ok = elapsed < SUITE_LIMIT_S
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'}  full suite wall time  {elapsed:.1f} s (limit {SUITE_LIMIT_S:.0f} s)"
    )
