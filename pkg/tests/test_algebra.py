import itertools
import random

import pytest

from relalg.algebra import (
    AlgebraSpec,
    AtomSig,
    UnknownAlgebraError,
    catalog_get,
    catalog_names,
    color_algebra,
    format_algebra_json,
    format_algebra_text,
    needs_of,
    parse_algebra,
    parse_algebra_json,
    parse_algebra_text,
    peircean_closure,
    validate_spec,
)

A4 = (AtomSig("a", 0), AtomSig("b", 1), AtomSig("r", 3), AtomSig("r'", 2))
A3 = (AtomSig("a", 0), AtomSig("r", 2), AtomSig("r'", 1))

# The six readings of the one-way r-triangle, written out by hand from
# (x,y,z) -> (x,y,z), (x',z',y'), (y,x,z'), (y',z,x'), (z,y',x), (z',x',y).
R_CLASS = {(2, 2, 2), (3, 3, 3), (2, 2, 3), (3, 2, 3), (2, 3, 2), (3, 3, 2)}


def test_closure_of_rrr_is_the_six_triple_class():
    assert peircean_closure({(2, 2, 2)}, A4) == R_CLASS


def test_closure_of_symmetric_one_cycle_is_itself():
    assert peircean_closure({(0, 0, 0)}, A4) == {(0, 0, 0)}


def test_closure_of_2_3_3_has_two_elements():
    assert peircean_closure({(2, 3, 3)}, A4) == {(2, 3, 3), (3, 2, 2)}


def test_closure_idempotent_and_monotone():
    rng = random.Random(7)
    for _ in range(50):
        triples = {
            (rng.randrange(4), rng.randrange(4), rng.randrange(4)) for _ in range(3)
        }
        closed = peircean_closure(triples, A4)
        assert peircean_closure(closed, A4) == closed
        assert closed >= triples
        extra = {(rng.randrange(4), rng.randrange(4), rng.randrange(4))}
        assert peircean_closure(triples | extra, A4) >= closed


def test_single_orbit_sizes():
    sizes = set()
    for t in itertools.product(range(4), repeat=3):
        sizes.add(len(peircean_closure({t}, A4)))
    assert sizes <= {1, 2, 3, 6}
    assert 6 in sizes and 1 in sizes and 2 in sizes


def test_all_symmetric_closure_is_permutation_orbit():
    sig = tuple(AtomSig(n, i) for i, n in enumerate("abc"))
    for t in itertools.product(range(3), repeat=3):
        x, y, z = t
        orbit = {(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)}
        assert peircean_closure({t}, sig) == orbit


def test_closure_rejects_bad_indices():
    with pytest.raises(IndexError):
        peircean_closure({(0, 0, 9)}, A4)


# -- needs ---------------------------------------------------------------------

ALLPAIRS_4 = {(y, z) for y in range(4) for z in range(4)}


def test_needs_1311_match_stated_sets():
    spec = catalog_get("1311_1316")
    needs = needs_of(spec)
    assert needs[0] == frozenset(ALLPAIRS_4 - {(0, 0)})
    assert needs[1] == frozenset(ALLPAIRS_4 - {(1, 1)})
    assert needs[2] == frozenset(ALLPAIRS_4 - {(2, 2), (2, 3), (3, 2)})
    assert needs[3] == frozenset(ALLPAIRS_4 - {(2, 3), (3, 2), (3, 3)})


def test_needs_33_37():
    spec = catalog_get("33_37")
    needs = needs_of(spec)
    allpairs = {(y, z) for y in range(3) for z in range(3)}
    assert needs[0] == frozenset(allpairs)
    assert needs[1] == frozenset(allpairs - {(2, 2)})
    assert needs[2] == frozenset(allpairs - {(1, 1)})


def test_needs_partition_allpairs_for_catalog():
    for name in ("33_37", "31_37", "32_65", "1306_1314", "1308_1316", "1311_1316", "1314_1316"):
        spec = catalog_get(name)
        needs = needs_of(spec)
        k = spec.atom_count
        allpairs = {(y, z) for y in range(k) for z in range(k)}
        for x in range(k):
            excluded = {(y, z) for (xx, y, z) in spec.forbidden if xx == x}
            assert needs[x] | excluded == allpairs
            assert not needs[x] & excluded


# -- catalog -------------------------------------------------------------------


def test_catalog_1311_forbidden_set():
    spec = catalog_get("1311_1316")
    assert set(spec.forbidden) == {(0, 0, 0), (1, 1, 1)} | R_CLASS


def test_catalog_e2():
    spec = catalog_get("E(2)")
    assert spec.forbidden == {(0, 0, 0), (1, 1, 1)}
    assert all(a.converse == i for i, a in enumerate(spec.atoms))


def test_catalog_33_37_forbidden():
    spec = catalog_get("33_37")
    assert spec.forbidden == {(2, 1, 1), (1, 2, 2)}


def test_catalog_1308_forbidden():
    spec = catalog_get("1308_1316")
    assert spec.forbidden == {(0, 0, 0), (1, 1, 1), (3, 2, 2), (2, 3, 3)}


def test_catalog_1314_forbidden():
    spec = catalog_get("1314_1316")
    assert spec.forbidden == {(0, 0, 0), (1, 1, 1)}


def test_catalog_31_37_and_1306_forbid_all_r_triples():
    a31 = catalog_get("31_37")
    assert a31.forbidden == frozenset(itertools.product((1, 2), repeat=3))
    a1306 = catalog_get("1306_1314")
    assert a1306.forbidden == frozenset({(1, 1, 1)}) | frozenset(
        itertools.product((2, 3), repeat=3)
    )


def test_catalog_atom_order_contract():
    for name in ("1306_1314", "1308_1316", "1311_1316", "1314_1316"):
        spec = catalog_get(name)
        assert [a.name for a in spec.atoms] == ["a", "b", "r", "r'"]
        assert [a.converse for a in spec.atoms] == [0, 1, 3, 2]
    for name in ("33_37", "31_37"):
        spec = catalog_get(name)
        assert [a.name for a in spec.atoms] == ["a", "r", "r'"]
        assert [a.converse for a in spec.atoms] == [0, 2, 1]


def test_color_algebra_large_k():
    spec = color_algebra(115)
    assert spec.atom_count == 115
    assert (3, 3, 3) in spec.forbidden
    assert len(spec.forbidden) == 115


def test_catalog_unknown_name():
    with pytest.raises(UnknownAlgebraError):
        catalog_get("nope_42")
    with pytest.raises(UnknownAlgebraError):
        catalog_get("E(0)")


def test_catalog_names_listed():
    names = catalog_names()
    assert "1311_1316" in names and "E(k)" in names


# -- validation ----------------------------------------------------------------


def test_validate_catalog_specs():
    for name in ("33_37", "31_37", "32_65", "1306_1314", "1308_1316", "1311_1316", "1314_1316", "E(3)"):
        report = validate_spec(catalog_get(name))
        assert report.valid, (name, report.problems)


def test_validate_detects_open_closure():
    spec = AlgebraSpec("bad", A4, frozenset({(2, 2, 2)}))
    report = validate_spec(spec)
    assert not report.valid
    assert any("Peircean" in p for p in report.problems)


def test_validate_detects_bad_converse():
    atoms = (AtomSig("a", 0), AtomSig("r", 2), AtomSig("r'", 2))
    report = validate_spec(AlgebraSpec("bad", atoms, frozenset()))
    assert not report.valid
    assert any("involutive" in p for p in report.problems)


def test_validate_detects_range_error():
    report = validate_spec(AlgebraSpec("bad", A4, frozenset({(0, 0, 7)})))
    assert not report.valid


# -- serialization --------------------------------------------------------------


def test_text_round_trip_all_catalog():
    for name in ("33_37", "31_37", "32_65", "1306_1314", "1308_1316", "1311_1316", "1314_1316", "E(4)"):
        spec = catalog_get(name)
        text = format_algebra_text(spec)
        back = parse_algebra_text(text, name=spec.name)
        assert back.forbidden == spec.forbidden, name
        assert [a.name for a in back.atoms] == [a.name for a in spec.atoms]
        assert [a.converse for a in back.atoms] == [a.converse for a in spec.atoms]
        assert format_algebra_text(back) == text


def test_text_format_example_parses_to_1311():
    text = "atoms: a b r r'; conv: a=a b=b r=r' ; forbid: aaa bbb rrr"
    spec = parse_algebra_text(text)
    assert spec.forbidden == catalog_get("1311_1316").forbidden


def test_json_round_trip():
    for name in ("33_37", "1311_1316", "E(2)"):
        spec = catalog_get(name)
        back = parse_algebra_json(format_algebra_json(spec))
        assert back == spec


def test_parse_algebra_dispatches_on_shape():
    spec = catalog_get("1311_1316")
    assert parse_algebra(format_algebra_json(spec)) == spec
    assert parse_algebra(format_algebra_text(spec)).forbidden == spec.forbidden


def test_tokenizer_handles_primed_names():
    text = "atoms: a b r r'; conv: a=a b=b r=r'; forbid: aaa bbb rr'r'"
    spec = parse_algebra_text(text)
    # rr'r' reads as (r, r', r'), whose closure is the two-triple class
    assert peircean_closure({(2, 3, 3)}, spec.atoms) <= spec.forbidden
