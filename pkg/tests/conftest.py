import pytest
from hypothesis import strategies as st

from triangle_pc.graphs import ComponentType, DynkinGraph


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("TRIANGLE_PC_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def component_types(max_rank=12):
    kinds = st.sampled_from(["A", "D", "E"])

    def build(kind, n):
        if kind == "A":
            return ComponentType("A", 1 + n % max_rank)
        if kind == "D":
            return ComponentType("D", 4 + n % (max_rank - 3)) if max_rank >= 4 else ComponentType("A", 1 + n % max_rank)
        es = [k for k in (6, 7, 8) if k <= max_rank]
        return ComponentType("E", es[n % len(es)]) if es else ComponentType("A", 1 + n % max_rank)

    return st.builds(build, kinds, st.integers(0, 100))


def dynkin_graphs(max_components=4, max_rank=12):
    return st.lists(component_types(max_rank), max_size=max_components).map(lambda cs: DynkinGraph(tuple(cs)))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
