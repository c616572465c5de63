import pytest

from workbench.acceptance import ACCEPTANCE
from workbench.host import K3Workbench, run_selftest


@pytest.fixture(scope="module")
def shared_workbench(settings):
    return K3Workbench(settings)


@pytest.mark.parametrize("name", list(ACCEPTANCE))
def test_acceptance_criterion(shared_workbench, name):
    report = ACCEPTANCE[name](shared_workbench)
    failed = [check.name for check in report.checks if not check.passed]
    assert report.checks
    assert not failed


def test_selftest(settings):
    report = run_selftest(settings)
    assert report.passed
    assert report.inputs == {"seed": settings.seed}
    assert set(report.results) == set(ACCEPTANCE)
