import math
from fractions import Fraction
from functools import lru_cache

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@lru_cache(maxsize=None)
def ref_bernoulli(n: int) -> Fraction:
    # sum_{k<=m} binom(m+1, k) B_k = 0, kept separate from the package oracle
    if n == 0:
        return Fraction(1)
    return -sum(math.comb(n + 1, k) * ref_bernoulli(k) for k in range(n)) / (n + 1)


def ref_genocchi(n: int) -> int:
    g = 2 * (1 - 2**n) * ref_bernoulli(n)
    assert g.denominator == 1
    return int(g)


def is_prime_td(m: int) -> bool:
    if m < 2:
        return False
    return all(m % d for d in range(2, math.isqrt(m) + 1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
