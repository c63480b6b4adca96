import math

import pytest

from conftest import ref_genocchi
from fastbern.bounds import coefficient_bound
from fastbern.genocchi import binomial_row, f_coefficients, genocchi_table, reduce_coefficients
from fastbern.modring import signed_lift


def test_table_examples():
    g = genocchi_table(12)
    assert [g[k] for k in range(1, 9)] == [1, -1, 0, 1, 0, -3, 0, 17]
    assert g[10] == -155 and g[12] == 2073 and g[3] == 0


def test_table_matches_bernoulli_recurrence():
    g = genocchi_table(128)
    assert all(g[k] == ref_genocchi(k) for k in range(1, 129))


def test_sign_and_parity_pattern():
    g = genocchi_table(512)
    for k in range(3, 513, 2):
        assert g[k] == 0
    for i in range(1, 257):
        assert (g[2 * i] > 0) == (i % 2 == 0)


def test_table_extends_consistently():
    small = [genocchi_table(20)[k] for k in range(1, 21)]
    big = genocchi_table(40)
    assert small == [big[k] for k in range(1, 21)]


def test_binomial_row():
    assert binomial_row(10, 3) == [10, 45, 120]
    assert binomial_row(52, 5)[-1] == 2598960
    assert binomial_row(777, 1) == [777]
    assert binomial_row(60, 60) == [math.comb(60, k) for k in range(1, 61)]
    with pytest.raises(ValueError):
        binomial_row(5, 6)


def test_f_coefficients():
    assert f_coefficients(10, 2).exact == (10, -45)
    assert f_coefficients(10, 4).exact == (10, -45, 0, 210)
    c = f_coefficients(300, 40).exact
    assert all(c[k] == 0 for k in range(2, 40, 2))
    assert all(c[k] == math.comb(300, k + 1) * ref_genocchi(k + 1) for k in range(40))


def test_reduce_coefficients():
    assert reduce_coefficients(f_coefficients(10, 2), 8).coeffs == (211, 10)
    fc = f_coefficients(200, 30)
    M = max(abs(c) for c in fc.exact).bit_length() + 2
    F = reduce_coefficients(fc, M)
    lifted = [signed_lift(v, 1 << M) for v in F.coeffs]
    assert lifted == list(reversed(fc.exact))


def test_coefficient_bound_small_n():
    # |binom(n, k+1) G_{k+1}| <= 7 (n/pi)^(k+1), exact comparison
    for n in range(1, 201):
        c = f_coefficients(n, n).exact
        for k in range(n):
            assert abs(c[k]) <= coefficient_bound(n, k)
