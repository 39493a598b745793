import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """``report(criterion, ok, detail)`` prints one PASS/FAIL line and keeps it for the summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def emit(criterion, ok, detail=""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        print(line)
        lines.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split(":")[0]):
            terminalreporter.write_line(line)
