import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from relalg.solver import bundled_solver_command  # noqa: E402


@pytest.fixture(scope="session")
def solver_cmd() -> str:
    return bundled_solver_command()


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return REPO_ROOT / "fixtures"


def _acceptance_module():
    return sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if (
        report.when == "call"
        and report.failed
        and item.name.startswith("test_criterion_")
    ):
        acceptance = _acceptance_module()
        if acceptance is not None:
            num = item.name.split("_")[2]
            acceptance.SUMMARY_LINES.append(f"ACCEPTANCE {num}: FAIL — {item.name}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    acceptance = _acceptance_module()
    lines = getattr(acceptance, "SUMMARY_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
