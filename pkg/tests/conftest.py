import pytest

import abcs.search
from abcs import datasets


@pytest.fixture(autouse=True)
def check_invariants(monkeypatch):
    monkeypatch.setattr(abcs.search, "CHECK_INVARIANTS", True)


@pytest.fixture(scope="session")
def fig2():
    return datasets.fig2()


@pytest.fixture(scope="session")
def women():
    return datasets.southern_women()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.VERDICTS:
            terminalreporter.write_line(line)
