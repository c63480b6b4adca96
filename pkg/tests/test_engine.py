import itertools
import random

import pytest

from conftest import ref_genocchi
from fastbern import oracle
from fastbern.bounds import f_value_bound
from fastbern.engine import (
    BatchInput,
    EngineOptions,
    alternating_sum,
    eval_points,
    genocchi_mod,
    genocchi_mod_batch,
    modulus_bits,
    power_table,
    recover_f_values,
)
from fastbern.genocchi import f_coefficients
from fastbern.polyeval import DensePoly2M, horner_eval
from fastbern.primes import smallest_prime_factor_table

ALL_OPTIONS = [EngineOptions(*flags) for flags in itertools.product([True, False], repeat=3)]


def test_modulus_bits():
    assert modulus_bits(100, 10, 5) == 53
    # log2(3 (16/pi)^5) = 13.297..., ceil 14, plus one
    assert modulus_bits(4, 4, 4) == 15


def test_eval_points():
    assert (3, 2, 6) in eval_points([3], 4)
    pts = eval_points([5, 7], 20)
    assert [(p, j) for p, j, _ in pts] == [(5, j) for j in range(1, 5)] + [(7, j) for j in range(1, 7)]
    assert all(x * p % 2**20 == j for p, j, x in pts)
    assert [(p, j) for p, j, _ in eval_points([7], 20, use_symmetry=True)] == [(7, 1), (7, 2), (7, 3)]


def test_recover_f_values():
    M = 24
    F = DensePoly2M(M, [-45, 10])
    evals = {(p, j): horner_eval(F, x) for p, j, x in eval_points([5], M)}
    got = recover_f_values(evals, [5], 2, M)
    assert got[(5, 2)] == -205 and got[(5, 1)] == -215


def test_power_table():
    assert power_table(5, 2, 8)[1:] == [1, 6, 11, 11]
    spf = smallest_prime_factor_table(200)
    for p in (3, 11, 101, 199):
        for s, e in [(1, 5), (4, 90), (9, 1000)]:
            want = [pow(j, e, p**s) for j in range(1, p)]
            assert power_table(p, s, e, spf)[1:] == want
            assert power_table(p, s, e, factor_powering=False)[1:] == want


def test_symmetry_needs_even_n():
    with pytest.raises(ValueError):
        alternating_sum(11, 5, 2, {1: 1, 2: 1}, [0, 1, 1], True)


def test_batch_examples():
    assert genocchi_mod_batch(BatchInput(10, 4, 4, (3,))).residues[3].value == 7
    out = genocchi_mod_batch(BatchInput(100, 8, 6, (3, 5)))
    for p in (3, 5):
        assert out.residues[p].value == oracle.congruence_direct(100, 8, p).value
    assert genocchi_mod_batch(BatchInput(100, 8, 6, ())).residues == {}


@pytest.mark.parametrize(
    "args",
    [
        (10, 4, 12, (3,)),  # N > n
        (10, 10, 8, (3,)),  # n = s
        (10, 3, 8, (3,)),  # s < 4
        (40, 8, 12, (3, 5, 7)),  # sum > s
        (40, 8, 12, (9,)),  # not prime
        (40, 12, 12, (3, 3)),  # repeated prime
        (40, 12, 5, (5,)),  # p >= N
    ],
)
def test_batch_rejects(args):
    with pytest.raises(ValueError):
        genocchi_mod_batch(BatchInput(*args))


def test_gmod_example():
    assert genocchi_mod(10, 5, 2).value == 20


def test_congruence_identity_sweep():
    # every (n, s, p) with even n in 10..400 step 6 and s in 4..min(n-1, 20)
    for n in range(10, 401, 6):
        fc_cache = {}
        g = ref_genocchi(n)
        for s in range(4, min(n - 1, 20) + 1):
            fc = fc_cache.setdefault(s, f_coefficients(n, s))
            for p in (3, 5, 7, 11, 13):
                if p >= n:
                    continue
                out = genocchi_mod_batch(BatchInput(n, s, n, (p,)), fc, strict=False)
                assert out.residues[p].value == g % p**s, (n, s, p)


def random_batch(rng, n_max=1000):
    n = rng.randint(6, n_max)
    s = rng.randint(4, min(n - 1, 60))
    N = rng.randint(4, min(n, s + 1))
    primes = [q for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59) if q < N]
    rng.shuffle(primes)
    P, total = [], 0
    for q in primes:
        if total + q <= s:
            P.append(q)
            total += q
    return n, s, N, tuple(sorted(P))


def test_engine_matches_oracle_random():
    rng = random.Random(99)
    for _ in range(60):
        n, s, N, P = random_batch(rng)
        opt = rng.choice(ALL_OPTIONS)
        if n % 2 and opt.use_symmetry:
            opt = EngineOptions(False, opt.factor_powering, opt.use_parity)
        out = genocchi_mod_batch(BatchInput(n, s, N, P, opt))
        for p in P:
            assert out.residues[p] == oracle.congruence_direct(n, s, p)
            assert out.max_abs_f[p] <= f_value_bound(n, p, s)


def test_options_agree():
    for n, s, P in [(200, 30, (3, 5, 7, 11)), (256, 17, (3, 13)), (64, 40, (5, 7, 11, 17))]:
        results = {tuple(sorted((p, r.value) for p, r in genocchi_mod_batch(BatchInput(n, s, 18, P, o)).residues.items()))
                   for o in ALL_OPTIONS}
        assert len(results) == 1


def test_f_value_bound_tight_instances():
    for n, s, P in [(500, 16, (3, 13)), (1000, 59, (5, 7, 11, 13, 23)), (999, 21, (3, 5, 13))]:
        out = genocchi_mod_batch(BatchInput(n, s, 24, P, EngineOptions(use_symmetry=n % 2 == 0)))
        for p in P:
            assert 0 < out.max_abs_f[p] <= f_value_bound(n, p, s)
