import pytest

from weilexp import ExtensionProfile, LocalRing

# Lines recorded by the acceptance tests, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def ring11():
    return LocalRing.of(ExtensionProfile(2, (1, 1)))


@pytest.fixture
def ring21_rel():
    return LocalRing.of(ExtensionProfile(2, (2, 1), [{"i": 2, "terms": [[[2, 0], 1]]}]))
