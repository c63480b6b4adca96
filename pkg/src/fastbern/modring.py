"""Residue arithmetic modulo 2^M and modulo prime powers p^s.

Residues are stored as canonical nonnegative integers. Signed
interpretation happens only through :func:`signed_lift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpz


class NotInvertibleError(ValueError):
    """Raised when asked to invert an element that is not a unit."""


@dataclass(frozen=True)
class PrimePowerResidue:
    """The class of ``value`` modulo ``p**s``."""

    p: int
    s: int
    value: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.s < 1:
            raise ValueError(f"s must be positive, got {self.s}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not reduced mod {self.p}^{self.s}")

    @property
    def modulus(self) -> int:
        return self.p**self.s


def inv_mod_pow2(a: int, M: int) -> int:
    """Inverse of odd ``a`` modulo ``2**M`` by Newton (Hensel) lifting.

    Each step ``b <- b*(2 - a*b)`` doubles the number of correct low bits.
    Starting from ``b = a`` is valid mod 8 since odd squares are 1 mod 8.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if a % 2 == 0:
        raise NotInvertibleError(f"{a} is even, hence not a unit mod 2^{M}")
    a = mpz(a)
    b = gmpy2.f_mod_2exp(a, 3)
    prec = 3
    while prec < M:
        prec = min(2 * prec, M)
        ar = gmpy2.f_mod_2exp(a, prec)
        b = gmpy2.f_mod_2exp(b * (2 - ar * b), prec)
    return int(gmpy2.f_mod_2exp(b, M))


def pow_mod(base: int, exp: int, modulus: int) -> int:
    """``base**exp % modulus``, with ``0**0 == 1``."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError("negative exponent")
    return int(gmpy2.powmod(base, exp, modulus))


def signed_lift(value: int, modulus: int) -> int:
    """The representative of ``value`` in ``(-modulus/2, modulus/2]``."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if not 0 <= value < modulus:
        raise ValueError(f"value {value} not in [0, {modulus})")
    return value - modulus if 2 * value > modulus else value


def _merge(left, right):
    (r1, m1), (r2, m2) = left, right
    t = gmpy2.f_mod((r2 - r1) * gmpy2.invert(m1, m2), m2)
    return r1 + m1 * t, m1 * m2


def crt_combine(residues: Iterable[PrimePowerResidue]) -> tuple[int, int]:
    """Combine residues modulo distinct prime powers into ``(value, modulus)``.

    Pairs are merged level by level (a balanced product tree), so the cost is
    dominated by a logarithmic number of full-size multiplications.
    """
    residues = list(residues)
    if not residues:
        raise ValueError("need at least one residue")
    seen = set()
    for r in residues:
        if r.p in seen:
            raise ValueError(f"duplicate prime {r.p}")
        seen.add(r.p)

    level: Sequence = [(mpz(r.value), mpz(r.p) ** r.s) for r in residues]
    while len(level) > 1:
        nxt = [_merge(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    value, modulus = level[0]
    return int(value), int(modulus)
