import pytest

_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_KEY] = []


@pytest.fixture
def record_criterion(request, capsys):
    """Record one pass/fail line for an acceptance criterion and echo it immediately."""
    lines = request.config.stash[_KEY]

    def record(number: int, title: str, checks: list[tuple[str, bool, str]], seconds: float):
        ok = all(passed for _, passed, _ in checks)
        failed = ["%s (%s)" % (name, detail) for name, passed, detail in checks if not passed]
        line = "criterion %d %s %s [%.1fs]" % (number, "PASS" if ok else "FAIL", title, seconds)
        if failed:
            line += " :: failed: " + "; ".join(failed)
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
