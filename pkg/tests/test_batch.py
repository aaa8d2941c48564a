import json

from relalg.algebra import catalog_get
from relalg.batch import BatchOptions, run_batch, solve_instance


def test_single_instance_unsat(solver_cmd):
    entry = solve_instance(catalog_get("33_37"), "group", 4, solver_cmd)
    assert entry["status"] == "unsat"
    assert entry["n"] == 4
    assert len(entry["dimacs_sha256"]) == 64


def test_single_instance_sat_verifies_and_saves_model(tmp_path, solver_cmd):
    entry = solve_instance(
        catalog_get("E(2)"), "points", 5, solver_cmd,
        models_dir=tmp_path,
    )
    assert entry["status"] == "sat"
    assert entry["verified"] is True
    model_file = tmp_path / "E(2)_points_n5.json"
    assert model_file.exists()
    data = json.loads(model_file.read_text())
    assert data["points"] == 5


def test_rejected_below_two():
    entry = solve_instance(catalog_get("33_37"), "group", 1, "unused")
    assert entry["status"] == "rejected"
    assert "nonempty" in entry["detail"]


def test_batch_range_and_journal(tmp_path, solver_cmd):
    journal = tmp_path / "run.jsonl"
    results = run_batch(
        catalog_get("33_37"), "group", 2, 6, solver_cmd, journal_path=journal
    )
    assert [r["n"] for r in results] == [2, 3, 4, 5, 6]
    assert all(r["status"] == "unsat" for r in results)
    lines = [json.loads(l) for l in journal.read_text().splitlines()]
    assert {l["n"] for l in lines} == {2, 3, 4, 5, 6}


def test_batch_resumes_from_journal(tmp_path, solver_cmd):
    journal = tmp_path / "run.jsonl"
    run_batch(catalog_get("33_37"), "group", 2, 5, solver_cmd, journal_path=journal)
    first = journal.read_text()
    results = run_batch(
        catalog_get("33_37"), "group", 2, 6, solver_cmd, journal_path=journal
    )
    # only n=6 was new work; completed lines were not re-solved or re-written
    resumed = [r for r in results if r.get("resumed")]
    assert {r["n"] for r in resumed} == {2, 3, 4, 5}
    lines = [json.loads(l) for l in journal.read_text().splitlines()]
    assert len(lines) == len(first.splitlines()) + 1


def test_batch_resume_skips_torn_journal_line(tmp_path, solver_cmd):
    journal = tmp_path / "run.jsonl"
    journal.write_text(
        '{"algebra": "33_37", "mode": "group", "n": 2, "status": "unsat"}\n'
        '{"algebra": "33_37", "mode": "group", "n": 3, "sta'  # torn write
    )
    results = run_batch(
        catalog_get("33_37"), "group", 2, 3, solver_cmd, journal_path=journal
    )
    assert results[0].get("resumed") is True
    assert results[1]["status"] == "unsat" and "resumed" not in results[1]


def test_batch_workers_agree_with_serial(tmp_path, solver_cmd):
    spec = catalog_get("33_37")
    serial = run_batch(spec, "group", 2, 7, solver_cmd, workers=1)
    parallel = run_batch(spec, "group", 2, 7, solver_cmd, workers=3)
    strip = lambda rs: [(r["n"], r["status"], r["dimacs_sha256"]) for r in rs]
    assert strip(serial) == strip(parallel)


def test_batch_options_recorded(solver_cmd):
    options = BatchOptions(symmetry_break=True, degree_bounds=True)
    entry = solve_instance(
        catalog_get("1311_1316"), "points", 3, solver_cmd, options=options
    )
    assert entry["options"] == {
        "symmetry_break": True,
        "degree_bounds": True,
        "nonempty_atoms": False,
    }
    assert entry["status"] == "unsat"
