"""Sieving helpers: odd primes below a bound and smallest-prime-factor tables."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Sequence


@dataclass(frozen=True)
class SpfTable:
    """``spf[j]`` is the least prime dividing ``j`` for ``2 <= j < limit``.

    Entries 0 and 1 are stored as 0 and 1 and carry no meaning.
    """

    limit: int
    spf: Sequence[int]

    def __getitem__(self, j: int) -> int:
        if not 2 <= j < self.limit:
            raise IndexError(f"{j} outside table range [2, {self.limit})")
        return self.spf[j]

    def is_prime(self, j: int) -> bool:
        return j >= 2 and self.spf[j] == j


@dataclass(frozen=True)
class PrimeSet:
    limit: int
    primes: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __getitem__(self, i):
        return self.primes[i]


def _small_primes(limit: int) -> list[int]:
    # plain bytearray sieve, primes < limit
    if limit < 3:
        return []
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit, p)))
    return [p for p in range(limit) if flags[p]]


def smallest_prime_factor_table(limit: int) -> SpfTable:
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    spf = list(range(limit))
    # Largest prime first so smaller primes overwrite: every composite m has
    # spf(m)^2 <= m, hence is reached by its least prime factor.
    for p in reversed(_small_primes(isqrt(limit - 1) + 1)):
        start = p * p
        spf[start::p] = [p] * len(range(start, limit, p))
    return SpfTable(limit, tuple(spf))


def sieve_odd_primes(limit: int, spf: SpfTable | None = None) -> PrimeSet:
    """Return all odd primes ``p`` with ``3 <= p < limit``.

    An existing :class:`SpfTable` covering ``limit`` may be passed in to avoid
    a second sieve pass.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if spf is None or spf.limit < limit:
        spf = smallest_prime_factor_table(limit)
    table = spf.spf
    return PrimeSet(limit, tuple(j for j in range(3, limit, 2) if table[j] == j))
