import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# (criterion number, title) -> outcome, filled in as acceptance tests finish
_ACCEPTANCE: dict[tuple[int, str], str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the twelve acceptance criteria")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None or call.when != "call":
        return
    key = tuple(mark.args)
    _ACCEPTANCE[key] = "PASS" if call.excinfo is None else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), outcome in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"criterion {num:>2}  {outcome}  {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
