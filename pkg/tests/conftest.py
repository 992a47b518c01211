import os

import pytest
from hypothesis import HealthCheck, settings

from equivhom import _gf2_fallback, gf2

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BACKENDS = {"numpy": _gf2_fallback}
try:
    from equivhom import _gf2_ext

    BACKENDS["compiled"] = _gf2_ext
except ImportError:  # pragma: no cover - only when the extension was not built
    pass


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per available elimination kernel."""
    monkeypatch.setattr(gf2, "_kernel", BACKENDS[request.param])
    return request.param


_CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if call.when == "setup" and call.excinfo is not None:
        _CRITERIA[n] = (title, False)
    elif call.when == "call":
        _CRITERIA[n] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
