import random

import pytest

from relalg.comer import (
    classify,
    converse_index,
    coset_partition,
    cycle_table,
    cycle_table_oracle,
    is_symmetric,
    mandatory_triples_oracle,
    scan,
    sumset,
    table_csv,
)
from relalg.primes import is_prime


def _divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


# -- partition construction ------------------------------------------------------


def test_p5_m2_by_hand():
    part = coset_partition(5, 2)
    assert part.g == 2
    assert set(part.coset(0)) == {1, 4}
    assert set(part.coset(1)) == {2, 3}
    assert part.coset_size == 2
    assert part.coset_index[0] == -1


def test_p71_m10_coset_size():
    part = coset_partition(71, 10)
    assert part.coset_size == 7


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        coset_partition(7, 4)  # 4 does not divide 6
    with pytest.raises(ValueError):
        coset_partition(10, 3)  # not prime
    with pytest.raises(ValueError):
        coset_partition(13, 3, generator=3)  # 3 generates only a subgroup mod 13


def test_coset_index_consistent_with_powers():
    part = coset_partition(29, 4)
    for t, u in enumerate(part.powers):
        assert part.coset_index[u] == t % 4
    for i in range(4):
        assert all(part.coset_index[u] == i for u in part.coset(i))


# -- symmetry and converse --------------------------------------------------------


def test_is_symmetric_examples():
    assert is_symmetric(coset_partition(751181, 115))  # coset size 6532
    assert not is_symmetric(coset_partition(71, 10))  # coset size 7
    part5 = coset_partition(5, 2)
    assert is_symmetric(part5)
    assert {(-u) % 5 for u in part5.coset(0)} == set(part5.coset(0))


def test_converse_index_examples():
    p71 = coset_partition(71, 10)
    assert converse_index(p71, 3) == 8
    # cross-check: shift by the index of -1
    shift = p71.coset_index[71 - 1]
    assert all(converse_index(p71, i) == (i + shift) % 10 for i in range(10))
    assert converse_index(coset_partition(5, 2), 1) == 1
    assert converse_index(coset_partition(33791, 62), 0) == 31


def test_converse_index_is_involution_and_matches_symmetry():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        for m in _divisors(p - 1):
            part = coset_partition(p, m)
            conv = [converse_index(part, i) for i in range(m)]
            assert all(conv[conv[i]] == i for i in range(m))
            assert (conv == list(range(m))) == is_symmetric(part)


# -- cycle tables -------------------------------------------------------------------


def test_cycle_table_p5_m2_by_hand():
    table = cycle_table(coset_partition(5, 2))
    assert table.rows == ((False, True), (True, True))


def test_cycle_table_p13_m3_sum_free_subgroup():
    part = coset_partition(13, 3)
    assert set(part.coset(0)) == {1, 5, 8, 12}
    assert cycle_table(part).rows[0][0] is False


def test_cycle_table_p7_m2_full_sumset():
    table = cycle_table(coset_partition(7, 2))
    assert table.rows[0][0] and table.rows[0][1]


def test_oracle_agreement_small():
    for p, m in ((5, 2), (13, 3), (13, 4), (29, 4), (31, 5), (71, 10)):
        part = coset_partition(p, m)
        assert cycle_table(part).rows == cycle_table_oracle(part).rows, (p, m)


def test_oracle_guard():
    with pytest.raises(ValueError):
        cycle_table_oracle(coset_partition(33791, 62))


def test_full_triple_expansion_matches_oracle_p29_m4():
    part = coset_partition(29, 4)
    table = cycle_table(part)
    oracle = mandatory_triples_oracle(part)
    for x in range(4):
        for y in range(4):
            for z in range(4):
                assert table.mandatory(x, y, z) == ((x, y, z) in oracle)


def test_translation_identity_consistency_random():
    rng = random.Random(3)
    for p, m in ((29, 7), (43, 6), (61, 12)):
        part = coset_partition(p, m)
        table = cycle_table(part)
        for _ in range(40):
            i, j, k = rng.randrange(m), rng.randrange(m), rng.randrange(m)
            direct = all(u in sumset(part, i, j) for u in part.coset(k))
            assert table.contains(i, j, k) == direct


def test_sumsets_are_subgroup_invariant():
    rng = random.Random(4)
    for p, m in ((29, 4), (31, 6), (37, 9)):
        part = coset_partition(p, m)
        x0 = part.coset(0)
        for _ in range(10):
            d = rng.randrange(m)
            h = rng.choice(x0)
            s = sumset(part, 0, d)
            assert {h * u % p for u in s} == s


def test_table_csv_format():
    assert table_csv(cycle_table(coset_partition(5, 2))) == "0,1\n1,1"


# -- classification -------------------------------------------------------------------


def test_classify_color_patterns():
    r5 = classify(coset_partition(5, 2))
    assert (r5.pattern, r5.colors) == ("color", 2)
    r13 = classify(coset_partition(13, 3))
    assert (r13.pattern, r13.colors) == ("color", 3)


def test_classify_split_asym_p33791():
    report = classify(coset_partition(33791, 62))
    assert report.pattern == "split-asym"
    assert report.pairing_shift == 31
    assert report.colors == 31
    assert report.deviations == []


def test_classify_other_p7_m3():
    report = classify(coset_partition(7, 3))
    assert report.pattern == "other"
    assert report.deviation_count > 0
    assert report.deviations


def test_classify_generator_invariant():
    # pattern kind must not depend on the choice of primitive root
    for p, m in ((13, 3), (5, 2), (31, 5)):
        base = classify(coset_partition(p, m))
        for g in range(2, p):
            try:
                part = coset_partition(p, m, generator=g)
            except ValueError:
                continue
            other = classify(part)
            assert other.pattern == base.pattern
            assert other.colors == base.colors


def test_classify_report_shape():
    d = classify(coset_partition(5, 2)).to_dict()
    assert set(d) == {
        "p", "m", "g", "symmetric", "pattern", "colors",
        "pairing_shift", "deviations", "deviation_count",
    }


# -- scanning ---------------------------------------------------------------------------


def test_scan_two_colors_first_witness_is_5():
    hits = scan(2, "color", 630)
    assert hits[0] == 5


def test_scan_three_colors_contains_13():
    hits = scan(3, "color", 630)
    assert hits[0] == 13


def test_scan_congruence_filter():
    # every witness for k colors must satisfy p = 1 mod 2k
    for p in scan(3, "color", 630):
        assert is_prime(p) and (p - 1) % 6 == 0 and ((p - 1) // 3) % 2 == 0


def test_scan_split_asym_finds_33791():
    assert scan(31, "split-asym", 33800) == [33791]


def test_scan_parallel_matches_serial():
    assert scan(3, "color", 630, workers=2) == scan(3, "color", 630)
    assert scan(2, "split-asym", 300, workers=2) == scan(2, "split-asym", 300)


def test_scan_rejects_bad_mode():
    with pytest.raises(ValueError):
        scan(2, "diagonal", 100)
    with pytest.raises(ValueError):
        scan(2, "split-sym")  # max_p required outside color mode
