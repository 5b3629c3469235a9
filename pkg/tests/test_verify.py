import pytest

from qcdistortion.config import get_tolerances
from qcdistortion.reporting import CheckEvent, StageEvent, SummaryEvent
from qcdistortion.verify import CHECKS, SuiteContext, grid_cells, run_check, run_suite


def test_check_names_are_unique():
    names = [name for name, _ in CHECKS]
    assert len(names) == len(set(names)) == 15


def test_grid_cells_keep_ordered_pairs():
    assert grid_cells([2.0, 5.0], [3.0, 5.0]) == [(2.0, 3.0), (2.0, 5.0)]
    assert len(grid_cells(None, None)) == 100


@pytest.mark.parametrize("name", ["distortion", "eigensolvers", "landscape_symmetry", "invariance", "certificate"])
def test_fast_checks_pass(name):
    report = run_suite(only=[name])
    assert report.passed, report.to_dict()


def test_per_cell_checks_on_a_small_grid():
    report = run_suite(alphas=[1.5, 6.5], betas=[11.0, 20.0], only=["optimal_direction", "crossings", "strict_drop"])
    assert report.passed, report.to_dict()
    assert [check.name for check in report.checks] == ["optimal_direction", "crossings", "strict_drop"]


def test_reduced_oracle_resolution():
    report = run_suite(only=["grid_oracle"], oracle_resolution=(128, 64))
    assert report.passed, report.to_dict()


def test_injected_fault_is_detected():
    report = run_suite(alphas=[2.0], betas=[4.0], inject_fault=True, only=["crossings", "branch_formulas"])
    assert not report.passed
    assert sorted(report.failures) == ["branch_formulas", "crossings"]
    assert all(check.error for check in report.checks)


def test_selected_checks_run_in_suite_order():
    forward = run_suite(only=["distortion", "angle_limits"])
    backward = run_suite(only=["angle_limits", "distortion"])
    suite_order = [name for name, _ in CHECKS if name in ("distortion", "angle_limits")]
    assert [check.name for check in forward.checks] == suite_order
    assert [check.name for check in backward.checks] == suite_order


def test_events_are_emitted_in_order():
    events = []
    run_suite(only=["distortion"], listener=events.append)
    assert [type(event) for event in events] == [StageEvent, CheckEvent, SummaryEvent]
    assert events[-1].total == 1 and events[-1].passed


def test_exceptions_become_failures():
    def broken(ctx):
        raise RuntimeError("boom")

    result = run_check("broken", broken, SuiteContext(tol=get_tolerances(), cells=[]))
    assert not result.passed
    assert result.error == "RuntimeError: boom"


def test_report_dict():
    report = run_suite(only=["distortion"])
    data = report.to_dict()
    assert data["passed"] and data["total"] == 1 and data["failures"] == []
    assert data["checks"][0]["name"] == "distortion"
