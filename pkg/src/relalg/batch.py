"""Resumable encode/solve/verify campaigns over ranges of n.

Each (algebra, mode, n) instance is encoded, handed to the solver process,
and, on SAT, decoded and re-verified; one JSON line per instance is
appended to the journal the moment it finishes, so an interrupted campaign
resumes by skipping every n whose line already carries a sat or unsat
verdict.  The returned summary is always sorted by n regardless of worker
interleaving.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import AlgebraSpec
from .repcheck import points_to_json, labeling_to_json, verify_labeling, verify_points
from .satenc import EncodingError, decode_group_model, decode_points_model, encode_group, encode_points
from .solver import run_solver


@dataclass
class BatchOptions:
    symmetry_break: bool = False
    degree_bounds: bool = False
    nonempty_atoms: bool = False

    def to_dict(self) -> dict:
        return {
            "symmetry_break": self.symmetry_break,
            "degree_bounds": self.degree_bounds,
            "nonempty_atoms": self.nonempty_atoms,
        }


@dataclass
class Journal:
    path: Path | None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def completed(self) -> dict[int, dict]:
        done: dict[int, dict] = {}
        if self.path is None or not self.path.exists():
            return done
        for line in self.path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                continue  # torn write from an interrupted run; redo that n
            if entry.get("status") in ("sat", "unsat"):
                done[entry["n"]] = entry
        return done

    def append(self, entry: dict) -> None:
        if self.path is None:
            return
        with self.lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")
                fh.flush()


def _encode(spec: AlgebraSpec, mode: str, n: int, options: BatchOptions):
    if mode == "group":
        return encode_group(spec, n, nonempty_atoms=options.nonempty_atoms)
    if mode == "points":
        return encode_points(
            spec,
            n,
            symmetry_break=options.symmetry_break,
            degree_bounds=options.degree_bounds,
            nonempty_atoms=options.nonempty_atoms,
        )
    raise ValueError(f"unknown mode {mode!r}")


def solve_instance(
    spec: AlgebraSpec,
    mode: str,
    n: int,
    solver_command: str,
    timeout: float | None = None,
    options: BatchOptions | None = None,
    models_dir: Path | None = None,
) -> dict:
    options = options or BatchOptions()
    entry = {
        "algebra": spec.name,
        "mode": mode,
        "n": n,
        "options": options.to_dict(),
    }
    try:
        cnf = _encode(spec, mode, n, options)
    except EncodingError as exc:
        entry.update(status="rejected", detail=str(exc), seconds=0.0)
        return entry
    entry["dimacs_sha256"] = cnf.sha256()
    result = run_solver(cnf, solver_command, timeout=timeout)
    entry["status"] = result.status
    entry["seconds"] = round(result.solver_time, 3)
    if result.detail:
        entry["detail"] = result.detail
    if result.status == "sat":
        if mode == "group":
            rep = decode_group_model(cnf, result.model)
            report = verify_labeling(spec, rep)
            text = labeling_to_json(spec, rep)
        else:
            rep = decode_points_model(cnf, result.model)
            report = verify_points(spec, rep)
            text = points_to_json(spec, rep)
        entry["verified"] = report.valid
        if models_dir is not None:
            models_dir.mkdir(parents=True, exist_ok=True)
            model_path = models_dir / f"{spec.name}_{mode}_n{n}.json"
            model_path.write_text(text + "\n", encoding="utf-8")
            entry["model_file"] = str(model_path)
    return entry


def run_batch(
    spec: AlgebraSpec,
    mode: str,
    n_from: int,
    n_to: int,
    solver_command: str,
    timeout: float | None = None,
    options: BatchOptions | None = None,
    workers: int = 1,
    journal_path: str | Path | None = None,
    models_dir: str | Path | None = None,
    progress=None,
) -> list[dict]:
    options = options or BatchOptions()
    journal = Journal(Path(journal_path) if journal_path else None)
    done = journal.completed()
    models = Path(models_dir) if models_dir else None

    results: dict[int, dict] = {}
    todo = []
    for n in range(n_from, n_to + 1):
        if n in done:
            entry = dict(done[n])
            entry["resumed"] = True
            results[n] = entry
        else:
            todo.append(n)

    def work(n: int) -> dict:
        return solve_instance(
            spec, mode, n, solver_command,
            timeout=timeout, options=options, models_dir=models,
        )

    if workers <= 1:
        for n in todo:
            entry = work(n)
            journal.append(entry)
            results[n] = entry
            if progress:
                progress(entry)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(work, n): n for n in todo}
            try:
                for future in as_completed(futures):
                    entry = future.result()
                    journal.append(entry)
                    results[entry["n"]] = entry
                    if progress:
                        progress(entry)
            except KeyboardInterrupt:
                for future in futures:
                    future.cancel()
                raise
    return [results[n] for n in sorted(results)]
