from relalg.fixtures import FIXTURES, all_as_expected, render, verify_all


def test_shipped_files_match_generated(fixtures_dir):
    for fixture in FIXTURES:
        path = fixtures_dir / fixture.filename
        assert path.exists(), f"missing shipped fixture {fixture.filename}"
        assert path.read_text(encoding="utf-8") == render(fixture) + "\n", fixture.filename


def test_all_fixtures_verify_as_expected(fixtures_dir):
    results = verify_all(fixtures_dir)
    assert all_as_expected(results), results


def test_mutated_fixture_is_the_invalid_one():
    expectations = {f.filename: f.expected_valid for f in FIXTURES}
    assert expectations.pop("z38_33_37_mutated.json") is False
    assert all(expectations.values())
