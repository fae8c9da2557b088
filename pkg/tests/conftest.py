import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_LINES = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one verdict line per acceptance criterion; printed in the summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(name, checks: dict, seconds: float, limit: float | None = None):
        bad = [k for k, v in checks.items() if not v]
        if limit is not None and seconds >= limit:
            bad.append(f"runtime {seconds:.2f}s >= {limit}s")
        verdict = "PASS" if not bad else "FAIL"
        tail = f"{len(checks)} checks, {seconds:.2f}s" + (f"; failed: {', '.join(bad)}" if bad else "")
        line = f"{name}: {verdict} ({tail})"
        lines.append(line)
        print(line)
        return not bad

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
