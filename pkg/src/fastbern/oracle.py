"""Slow, exact reference values.

Nothing here touches the fast evaluation path: Bernoulli numbers come from
the defining recurrence ``sum_{k<=m} binom(m+1, k) B_k = 0`` and the
prime-power congruence is summed term by term with Python integers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

from .modring import PrimePowerResidue
from .primes import sieve_odd_primes

MAX_INDEX = 2**16


@dataclass(frozen=True)
class BernoulliRow:
    limit: int
    values: tuple[Fraction, ...]  # B_0 .. B_limit


class _Row:
    """Even-index ``B_m`` stored as integers ``L * B_m``.

    ``L`` is the product of all primes up to ``limit + 1``, which every
    denominator divides (von Staudt-Clausen), so the recurrence runs on
    integers with one exact division per step.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.limit = 0
        self.scale = 2
        self.scaled = [2]  # L * B_0, L * B_2, ...

    def extend(self, n: int) -> None:
        with self._lock:
            if n <= self.limit:
                return
            scale = 2 * prod(sieve_odd_primes(n + 2))
            ratio = scale // self.scale
            scaled = [a * ratio for a in self.scaled]
            half = -(scale // 2)  # L * B_1
            for m in range(2 * len(scaled), n + 1, 2):
                # binom(m+1, k) for k = 0..m, built incrementally
                acc = (m + 1) * half
                b = 1
                for k in range(0, m, 2):
                    acc += b * scaled[k // 2]
                    b = b * (m + 1 - k) // (k + 1)
                    b = b * (m - k) // (k + 2)
                scaled.append(-acc // (m + 1))
            self.scale, self.scaled, self.limit = scale, scaled, max(n, 2 * len(scaled) - 2)

    def get(self, n: int) -> Fraction:
        self.extend(n)
        return Fraction(self.scaled[n // 2], self.scale)


_row = _Row()


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    if n > MAX_INDEX:
        raise ValueError(f"oracle capped at n <= {MAX_INDEX}, got {n}")


def bernoulli_exact_small(n: int) -> Fraction:
    """``B_n`` with the convention ``B_1 = -1/2``."""
    _check_index(n)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return _row.get(n)


def bernoulli_row(limit: int) -> BernoulliRow:
    _check_index(limit)
    return BernoulliRow(limit, tuple(bernoulli_exact_small(k) for k in range(limit + 1)))


def genocchi_exact_small(n: int) -> int:
    """``G_n = 2 (1 - 2^n) B_n`` as an exact integer."""
    g = 2 * (1 - 2**n) * bernoulli_exact_small(n)
    assert g.denominator == 1
    return g.numerator


def congruence_direct(n: int, s: int, p: int) -> PrimePowerResidue:
    """``G_n mod p^s`` summed naively from ``sum_j (-1)^j j^(n-s) F_p(j)``.

    ``0**0`` is taken as 1, which is what the untruncated identity gives
    for the ``j = 0`` term when ``n = s``.
    """
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    coeffs = [comb(n, k + 1) * genocchi_exact_small(k + 1) * p**k for k in range(s)]
    total = 0
    for j in range(p):
        fp = 0
        for c in coeffs:  # highest power of x first
            fp = fp * j + c
        term = j ** (n - s) * fp
        total += -term if j % 2 else term
    return PrimePowerResidue(p, s, total % p**s)
