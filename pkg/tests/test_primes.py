import random

import pytest

from conftest import is_prime_td
from fastbern.primes import sieve_odd_primes, smallest_prime_factor_table


def test_small_examples():
    assert list(sieve_odd_primes(10)) == [3, 5, 7]
    assert list(sieve_odd_primes(3)) == []
    assert len(sieve_odd_primes(576)) == 104


def test_spf_example():
    t = smallest_prime_factor_table(10)
    assert [t[i] for i in range(2, 10)] == [2, 3, 2, 5, 2, 7, 2, 3]


@pytest.mark.parametrize("limit", [1, 0, -5])
def test_spf_rejects_tiny_limit(limit):
    with pytest.raises(ValueError):
        smallest_prime_factor_table(limit)


@pytest.mark.parametrize("limit", [2, 1])
def test_sieve_rejects_tiny_limit(limit):
    with pytest.raises(ValueError):
        sieve_odd_primes(limit)


def test_count_matches_trial_division():
    limit = 100_000
    ps = sieve_odd_primes(limit)
    assert len(ps) == sum(1 for m in range(3, limit) if m % 2 and is_prime_td(m))


def test_spf_against_trial_division():
    rng = random.Random(7)
    for limit in [rng.randint(2, 10**6) for _ in range(3)] + [2, 3, 50]:
        t = smallest_prime_factor_table(limit)
        for m in rng.sample(range(2, limit), min(300, limit - 2)):
            d = next(q for q in range(2, m + 1) if m % q == 0)
            assert t[m] == d
            assert t.is_prime(m) == is_prime_td(m)


def test_primes_are_odd_and_sorted():
    ps = list(sieve_odd_primes(2000))
    assert ps == sorted(ps) and all(p % 2 == 1 for p in ps)
