"""Driving an external DIMACS solver process and parsing its verdict.

Any SAT-competition-compliant executable works: it is launched with the
DIMACS file as its final argument and must exit 10 for SAT (with ``v``
model lines on stdout) or 20 for UNSAT.  Anything else, including a
timeout, is reported as unknown with a diagnostic rather than raised.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass

from .satenc import CnfFormula, write_dimacs

SOLVER_ENV_VAR = "RA_SOLVER_CMD"

_KNOWN_SOLVERS = (
    "cryptominisat5",
    "cryptominisat",
    "cadical",
    "kissat",
    "glucose",
    "lingeling",
    "picosat",
)


class SolverLaunchError(RuntimeError):
    pass


@dataclass
class SolveResult:
    status: str  # "sat" | "unsat" | "unknown"
    model: frozenset[int] | None
    solver_time: float
    detail: str = ""


def bundled_solver_command() -> str:
    return f"{shlex.quote(sys.executable)} -m relalg.cdcl"


def default_solver_command() -> str:
    """RA_SOLVER_CMD, else the first known solver on PATH, else the bundled one."""
    env = os.environ.get(SOLVER_ENV_VAR)
    if env:
        return env
    for name in _KNOWN_SOLVERS:
        if shutil.which(name):
            return name
    return bundled_solver_command()


def _parse_model_lines(stdout: str) -> frozenset[int] | None:
    lits: list[int] = []
    terminated = False
    saw_v = False
    for line in stdout.splitlines():
        if line.startswith("v ") or line.strip() == "v":
            saw_v = True
            for tok in line[1:].split():
                value = int(tok)
                if value == 0:
                    terminated = True
                    break
                lits.append(value)
        if terminated:
            break
    if not saw_v:
        return None
    return frozenset(v for v in lits if v > 0)


def run_solver(
    cnf: CnfFormula, solver_command: str, timeout: float | None = None
) -> SolveResult:
    """Write DIMACS, launch the solver, map exit codes per the convention."""
    with tempfile.NamedTemporaryFile(
        mode="w", suffix=".cnf", prefix="relalg_", delete=False
    ) as fh:
        path = fh.name
    try:
        write_dimacs(cnf, path)
        cmd = shlex.split(solver_command) + [path]
        start = time.monotonic()
        try:
            proc = subprocess.run(
                cmd, capture_output=True, text=True, timeout=timeout
            )
        except FileNotFoundError as exc:
            raise SolverLaunchError(f"cannot launch solver: {exc}") from exc
        except subprocess.TimeoutExpired:
            return SolveResult(
                status="unknown",
                model=None,
                solver_time=time.monotonic() - start,
                detail=f"timeout after {timeout}s",
            )
        elapsed = time.monotonic() - start
        if proc.returncode == 20:
            return SolveResult(status="unsat", model=None, solver_time=elapsed)
        if proc.returncode == 10:
            model = _parse_model_lines(proc.stdout)
            if model is None:
                return SolveResult(
                    status="unknown",
                    model=None,
                    solver_time=elapsed,
                    detail="exit code 10 but no parseable v lines",
                )
            return SolveResult(status="sat", model=model, solver_time=elapsed)
        return SolveResult(
            status="unknown",
            model=None,
            solver_time=elapsed,
            detail=f"unexpected exit code {proc.returncode}",
        )
    finally:
        try:
            os.unlink(path)
        except OSError:
            pass
