import numpy as np
import pytest
from hypothesis import settings

from weightseq import gevrey, qgevrey

settings.register_profile("default", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("default")

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def builtins():
    return {"gevrey1": gevrey(1), "gevrey2": gevrey(2), "gevrey3": gevrey(3), "qgevrey2": qgevrey(2)}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.failed):
        ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        status = "PASS" if ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
