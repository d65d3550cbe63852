import pytest

_LOG = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LOG] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_LOG]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LOG, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
