"""Rigorous magnitude bounds used to size moduli, evaluated with exact integers.

pi enters every bound, so we bracket it by 30-digit rationals and always
round in the safe direction.
"""

from __future__ import annotations

import math
from fractions import Fraction

from gmpy2 import mpz

PI_LO = Fraction(314159265358979323846264338327, 10**29)
PI_HI = PI_LO + Fraction(1, 10**29)


def _fits(num: int, den: int, L: int) -> bool:
    # num/den <= 2**L
    return num <= den << L if L >= 0 else num << -L <= den


def ceil_log2(num: int, den: int = 1) -> int:
    """Smallest ``L`` with ``num/den <= 2**L`` for positive ``num``, ``den``."""
    if num <= 0 or den <= 0:
        raise ValueError("arguments must be positive")
    L = num.bit_length() - den.bit_length()
    while not _fits(num, den, L):
        L += 1
    while _fits(num, den, L - 1):
        L -= 1
    return L


def coefficient_bound(n: int, k: int) -> int:
    """``ceil(7 (n/pi)^(k+1))``, rounded up (pi replaced by a lower bound)."""
    e = k + 1
    num = 7 * n**e * PI_LO.denominator**e
    den = PI_LO.numerator**e
    return -(-num // den)


def f_value_bound(n: int, p: int, s: int) -> int:
    """``ceil(3 (n p/pi)^(s+1))``, rounded up, bounding every ``|F_p(j)|``."""
    e = s + 1
    num = 3 * (n * p) ** e * PI_LO.denominator**e
    den = PI_LO.numerator**e
    return -(-num // den)


def genocchi_bound_exceeded_by(modulus: int, n: int) -> bool:
    """True when ``modulus > 2 * 7 (n/pi)^n``, so a centred lift of G_n is exact."""
    return log_modulus_clears_genocchi(math.log(modulus), n, lambda: modulus)


def log_modulus_clears_genocchi(log_modulus: float, n: int, modulus) -> bool:
    """Same test from ``ln(modulus)``; ``modulus()`` is called only in close cases."""
    margin = log_modulus - math.log(14) - n * math.log(n / math.pi)
    if abs(margin) > 1e-9 * max(1.0, abs(log_modulus)) + 1.0:
        return margin > 0
    # 14 n^n < modulus * pi^n, checked with pi_lo < pi
    lhs = 14 * mpz(n) ** n * mpz(PI_LO.denominator) ** n
    return lhs < mpz(modulus()) * mpz(PI_LO.numerator) ** n
