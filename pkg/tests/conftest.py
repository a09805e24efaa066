import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance check: ``criterion(label, passed, detail)``."""
    lines = request.config.stash[_LINES]

    def record(label, passed, detail=""):
        lines.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
