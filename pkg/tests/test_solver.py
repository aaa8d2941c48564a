import stat
import textwrap

import pytest

from relalg.algebra import catalog_get
from relalg.satenc import CnfFormula, encode_group
from relalg.solver import (
    SolverLaunchError,
    bundled_solver_command,
    default_solver_command,
    run_solver,
)


def _tiny_sat() -> CnfFormula:
    return CnfFormula(var_count=2, clauses=[[1, 2], [-1, 2]])


def _tiny_unsat() -> CnfFormula:
    return CnfFormula(var_count=1, clauses=[[1], [-1]])


def test_bundled_solver_sat(solver_cmd):
    result = run_solver(_tiny_sat(), solver_cmd)
    assert result.status == "sat"
    assert result.model is not None and 2 in result.model


def test_bundled_solver_unsat(solver_cmd):
    result = run_solver(_tiny_unsat(), solver_cmd)
    assert result.status == "unsat"
    assert result.model is None


def test_bundled_solver_on_group_encoding(solver_cmd):
    cnf = encode_group(catalog_get("33_37"), 2)
    assert run_solver(cnf, solver_cmd).status == "unsat"


def _write_script(tmp_path, name, body):
    path = tmp_path / name
    path.write_text(textwrap.dedent(body))
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


def test_sat_exit_code_with_model_lines(tmp_path):
    script = _write_script(
        tmp_path,
        "fake_sat.sh",
        """\
        #!/bin/sh
        echo "s SATISFIABLE"
        echo "v 1 -2 0"
        exit 10
        """,
    )
    result = run_solver(_tiny_sat(), script)
    assert result.status == "sat"
    assert result.model == frozenset({1})


def test_unsat_exit_code(tmp_path):
    script = _write_script(tmp_path, "fake_unsat.sh", "#!/bin/sh\nexit 20\n")
    result = run_solver(_tiny_sat(), script)
    assert result.status == "unsat"


def test_garbage_exit_code_is_unknown(tmp_path):
    script = _write_script(tmp_path, "fake_bad.sh", "#!/bin/sh\necho nonsense\nexit 0\n")
    result = run_solver(_tiny_sat(), script)
    assert result.status == "unknown"
    assert "exit code 0" in result.detail


def test_sat_without_model_lines_is_unknown(tmp_path):
    script = _write_script(tmp_path, "fake_nomodel.sh", "#!/bin/sh\nexit 10\n")
    result = run_solver(_tiny_sat(), script)
    assert result.status == "unknown"
    assert "v lines" in result.detail


def test_timeout_is_unknown(tmp_path):
    script = _write_script(tmp_path, "fake_slow.sh", "#!/bin/sh\nsleep 30\nexit 20\n")
    result = run_solver(_tiny_sat(), script, timeout=0.3)
    assert result.status == "unknown"
    assert "timeout" in result.detail


def test_missing_executable_raises():
    with pytest.raises(SolverLaunchError):
        run_solver(_tiny_sat(), "/nonexistent/solver-binary")


def test_env_var_overrides_default(monkeypatch):
    monkeypatch.setenv("RA_SOLVER_CMD", "my-solver --flag")
    assert default_solver_command() == "my-solver --flag"
    monkeypatch.delenv("RA_SOLVER_CMD")
    assert default_solver_command()  # falls back to something runnable


def test_bundled_command_launches(solver_cmd):
    assert "cdcl" in bundled_solver_command()
