"""The shipped example representations, generated programmatically.

Each fixture is an explicit representation (or a deliberately broken
mutation of one) stored as JSON under ``fixtures/``.  Regenerating and
re-verifying the whole set is the repository's smoke test: the grouping
fixtures double as the ground truth pinning the forbidden-cycle sets of
the catalog algebras they represent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .algebra import AlgebraSpec, catalog_get
from .comer import coset_partition
from .repcheck import (
    GroupingRep,
    LabelingRep,
    VerifyReport,
    grouping_to_json,
    labeling_to_json,
    parse_rep_json,
    verify_grouping,
    verify_labeling,
)

Z38_A = (1, 5, 6, 8, 9, 14, 16, 17, 18, 19, 20, 21, 22, 24, 29, 30, 32, 33, 37)
Z38_R = (3, 7, 10, 11, 13, 23, 26, 34, 36)
Z38_R_CONV = (2, 4, 12, 15, 25, 27, 28, 31, 35)


def _labeling_from_sets(n: int, sets: dict[int, tuple[int, ...]]) -> LabelingRep:
    label = [-1] * n
    for atom, elements in sets.items():
        for x in elements:
            label[x] = atom
    return LabelingRep(n=n, label=tuple(label))


def z38_labeling() -> LabelingRep:
    return _labeling_from_sets(38, {0: Z38_A, 1: Z38_R, 2: Z38_R_CONV})


def z38_mutated_labeling() -> LabelingRep:
    """The Z/38 fixture with elements 3 and 2 swapped between r and r'."""
    r = tuple(x for x in Z38_R if x != 3) + (2,)
    rc = tuple(x for x in Z38_R_CONV if x != 2) + (3,)
    return _labeling_from_sets(38, {0: Z38_A, 1: r, 2: rc})


def f71_grouping() -> GroupingRep:
    part = coset_partition(71, 10)
    group = [-1] * 10
    for i in (3, 8):
        group[i] = 0  # a
    for i in (4, 9):
        group[i] = 1  # b
    for i in (0, 1, 2):
        group[i] = 2  # r
    for i in (5, 6, 7):
        group[i] = 3  # r'
    return GroupingRep(part=part, group=tuple(group))


def p33791_31_37_grouping() -> GroupingRep:
    part = coset_partition(33791, 62)
    group = tuple(1 if i == 0 else 2 if i == 31 else 0 for i in range(62))
    return GroupingRep(part=part, group=group)


def p33791_1306_grouping() -> GroupingRep:
    part = coset_partition(33791, 62)
    group = tuple(
        2 if i == 0 else 3 if i == 31 else 1 if i in (1, 32) else 0 for i in range(62)
    )
    return GroupingRep(part=part, group=group)


def p751181_32_65_grouping() -> GroupingRep:
    part = coset_partition(751181, 115)
    group = tuple(1 if i == 0 else 2 if i == 1 else 0 for i in range(115))
    return GroupingRep(part=part, group=group)


@dataclass(frozen=True)
class Fixture:
    filename: str
    algebra: str
    expected_valid: bool
    build: Callable


FIXTURES: tuple[Fixture, ...] = (
    Fixture("z38_33_37.json", "33_37", True, z38_labeling),
    Fixture("z38_33_37_mutated.json", "33_37", False, z38_mutated_labeling),
    Fixture("f71_1314_1316.json", "1314_1316", True, f71_grouping),
    Fixture("p33791_31_37.json", "31_37", True, p33791_31_37_grouping),
    Fixture("p33791_1306_1314.json", "1306_1314", True, p33791_1306_grouping),
    Fixture("p751181_32_65.json", "32_65", True, p751181_32_65_grouping),
)


def render(fixture: Fixture) -> str:
    spec = catalog_get(fixture.algebra)
    rep = fixture.build()
    if isinstance(rep, LabelingRep):
        return labeling_to_json(spec, rep)
    return grouping_to_json(spec, rep)


def verify(spec: AlgebraSpec, rep) -> VerifyReport:
    if isinstance(rep, LabelingRep):
        return verify_labeling(spec, rep)
    return verify_grouping(spec, rep)


def write_all(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for fixture in FIXTURES:
        path = directory / fixture.filename
        path.write_text(render(fixture) + "\n", encoding="utf-8")
        written.append(path)
    return written


def verify_all(directory: str | Path | None = None) -> list[dict]:
    """Re-verify every fixture, from disk when a directory is given."""
    results = []
    for fixture in FIXTURES:
        spec = catalog_get(fixture.algebra)
        if directory is not None:
            text = (Path(directory) / fixture.filename).read_text(encoding="utf-8")
            rep = parse_rep_json(spec, text)
        else:
            rep = fixture.build()
        report = verify(spec, rep)
        results.append(
            {
                "fixture": fixture.filename,
                "algebra": fixture.algebra,
                "valid": report.valid,
                "expected_valid": fixture.expected_valid,
                "as_expected": report.valid == fixture.expected_valid,
                "counts": report.counts,
            }
        )
    return results


def all_as_expected(results: list[dict]) -> bool:
    return all(r["as_expected"] for r in results)


def summary_json(results: list[dict]) -> str:
    return json.dumps(results, indent=2, sort_keys=True)
