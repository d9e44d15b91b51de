import os
import random

import pytest
from hypothesis import HealthCheck, settings

from vknot.fixtures import FIXTURES, fixture
from vknot.moves import apply, pick_move

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=15, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def descendant(name, seed, steps, max_crossings=7, max_virtual=6):
    """A random diagram reached from a fixture by `steps` random moves."""
    rng = random.Random(seed)
    code = fixture(name)
    for _ in range(steps):
        code = apply(code, pick_move(code, rng, max_crossings, max_virtual))
    return code


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    return request.param, fixture(request.param)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    ok = _criteria.get(name, True)
    if report.failed or (report.when == "call" and report.skipped):
        ok = False
    _criteria[name] = ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        num, _, label = name[len("test_criterion_"):].partition("_")
        status = "PASS" if _criteria[name] else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {status}  {label.replace('_', ' ')}")
