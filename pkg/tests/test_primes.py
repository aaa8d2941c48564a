import pytest

from relalg.primes import factorize, is_prime, is_primitive_root, smallest_primitive_root


def _trial_division(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_is_prime_matches_trial_division_up_to_20000():
    for n in range(20000):
        assert is_prime(n) == _trial_division(n), n


@pytest.mark.parametrize("p", [33791, 71, 751181, 2**61 - 1, 4099])
def test_known_primes(p):
    assert is_prime(p)


@pytest.mark.parametrize("n", [561, 1105, 1729, 29341, 75361, 2**61 - 3])
def test_known_composites_including_carmichael(n):
    assert not is_prime(n)


def test_is_prime_rejects_out_of_range():
    with pytest.raises(ValueError):
        is_prime(1 << 64)
    with pytest.raises(ValueError):
        is_prime(-7)


def test_factorize():
    assert factorize(1) == {}
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(751180) == {2: 2, 5: 1, 23: 2, 71: 1}
    assert factorize(97) == {97: 1}


def test_smallest_primitive_root_definition():
    for p in (3, 5, 7, 11, 13, 71, 113, 197):
        g = smallest_primitive_root(p)
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        assert len(seen) == p - 1
        for smaller in range(2, g):
            assert not is_primitive_root(smaller, p)


def test_smallest_primitive_root_known_values():
    assert smallest_primitive_root(5) == 2
    assert smallest_primitive_root(2) == 1
    assert smallest_primitive_root(13) == 2


def test_primitive_root_rejects_composite():
    with pytest.raises(ValueError):
        smallest_primitive_root(10)
