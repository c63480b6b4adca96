import pytest

from fastbern.bench import doubling_exponents, fit_exponent, measure


def test_fit_exponent_power_law():
    ns = [2**k for k in range(10, 15)]
    assert fit_exponent(ns, [3 * n**1.5 for n in ns]) == pytest.approx(1.5)
    assert doubling_exponents([1, 2, 4], [1, 4, 16]) == pytest.approx([2.0, 2.0])


def test_measure_subprocess():
    m = measure(512, "1/2")
    assert m.n == 512 and m.wall_s > 0 and m.peak_rss_bytes > 0 and m.workspace_bytes > 0
