"""Small Genocchi numbers, binomial rows and the coefficients of F(x).

Here ``F(x) = sum_{k<s} binom(n, k+1) G_{k+1} x^(s-1-k)``; it depends on
``n`` and ``s`` only, so callers compute it once and reduce it to each
modulus they need.
"""

from __future__ import annotations

import threading
from itertools import accumulate
from dataclasses import dataclass

from .polyeval import DensePoly2M


class _GenocchiCache:
    # Boustrophedon (Seidel-Entringer) rows give the zigzag numbers E_m;
    # |G_2i| = i * E_(2i-1) / 4^(i-1). The last row is kept so the table can
    # be extended without starting over.

    def __init__(self):
        self._lock = threading.Lock()
        self._row = [1]  # row m ends with E_m
        self._m = 0
        self._g = [0, 1]  # G_0, G_1, ...

    def upto(self, s: int) -> list[int]:
        with self._lock:
            while len(self._g) <= s:
                k = len(self._g)
                if k % 2:
                    self._g.append(0)
                    continue
                i = k // 2
                while self._m < k - 1:
                    self._row = [0, *accumulate(reversed(self._row))]
                    self._m += 1
                mag = (i * self._row[-1]) >> (2 * i - 2)
                self._g.append(-mag if i % 2 else mag)
            return self._g[: s + 1]


_cache = _GenocchiCache()


@dataclass(frozen=True)
class GenocchiTable:
    s: int
    values: tuple[int, ...]  # G_1 .. G_s

    def __getitem__(self, k: int) -> int:
        """``G_k`` for ``1 <= k <= s``."""
        if not 1 <= k <= self.s:
            raise IndexError(k)
        return self.values[k - 1]


@dataclass(frozen=True)
class FCoefficients:
    """Exact ``c_k = binom(n, k+1) G_(k+1)`` for ``k < s``; ``c_k`` multiplies ``x^(s-1-k)``."""

    n: int
    s: int
    exact: tuple[int, ...]


def genocchi_table(s: int) -> GenocchiTable:
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    return GenocchiTable(s, tuple(_cache.upto(s)[1:]))


def binomial_row(n: int, s: int) -> list[int]:
    """``[binom(n, 1), ..., binom(n, s)]``."""
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    row, b = [], 1
    for k in range(s):
        b = b * (n - k) // (k + 1)
        row.append(b)
    return row


def f_coefficients(n: int, s: int) -> FCoefficients:
    binoms = binomial_row(n, s)
    g = genocchi_table(s).values
    return FCoefficients(n, s, tuple(b * gk for b, gk in zip(binoms, g)))


def reduce_coefficients(fc: FCoefficients, M: int) -> DensePoly2M:
    """``F`` as an element of ``(Z/2^M Z)[x]``, ascending powers."""
    return DensePoly2M(M, tuple(reversed(fc.exact)))
