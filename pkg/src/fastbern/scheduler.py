"""Top-level driver: pick parameters, run all batches, and reconstruct B_n.

For ``1/3 <= alpha <= 1/2`` the parameters are

    N = floor(n^alpha L^(1-alpha)),  s = floor(2 n^(1-alpha) L^alpha),
    r = floor(2 n^(1-2 alpha) L^(2 alpha - 1)),       L = ln n,

the odd primes below ``N`` are split into batches of at most ``r`` primes,
and the residues ``G_n mod p^s`` are combined by CRT.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import gmpy2
import mpmath

from . import oracle
from .bounds import genocchi_bound_exceeded_by, log_modulus_clears_genocchi
from .engine import BatchInput, EngineOptions, genocchi_mod_batch, modulus_bits
from .genocchi import f_coefficients
from .modring import crt_combine, signed_lift
from .primes import sieve_odd_primes, smallest_prime_factor_table

SMALL_N = 256
ALPHA_MIN, ALPHA_MAX = Fraction(1, 3), Fraction(1, 2)

AlphaLike = Union[float, int, str, Fraction]


class IntegrityError(RuntimeError):
    """An internal consistency check failed; the result must not be trusted."""


@dataclass(frozen=True)
class PlanParams:
    n: int
    alpha: Fraction
    N: int
    s: int
    r: int
    batches: tuple[tuple[int, ...], ...]
    M: int
    sufficiency_margin: float

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for b in self.batches for p in b)


@dataclass
class RunReport:
    plan: PlanParams | None
    timings_ms: dict[str, float] = field(default_factory=dict)
    peak_workspace_bits: int = 0
    max_abs_f: dict[int, int] = field(default_factory=dict)


def normalize_alpha(alpha: AlphaLike) -> Fraction:
    """Exact alpha; floats are snapped to the nearest small fraction (0.333.. -> 1/3)."""
    if isinstance(alpha, float):
        a = Fraction(alpha).limit_denominator(10**6)
    else:
        a = Fraction(alpha)
    if not ALPHA_MIN <= a <= ALPHA_MAX:
        raise ValueError(f"alpha must lie in [1/3, 1/2], got {alpha}")
    return a


def _floor_formula(n: int, alpha: Fraction, coef: int, npow: Fraction, lpow: Fraction) -> int:
    with mpmath.workdps(60):
        a = mpmath.mpf(npow.numerator) / npow.denominator
        b = mpmath.mpf(lpow.numerator) / lpow.denominator
        return int(mpmath.floor(coef * mpmath.power(n, a) * mpmath.power(mpmath.log(n), b)))


def _margin(n: int, s: int, primes) -> float:
    return s * sum(math.log(p) for p in primes) - math.log(14) - n * math.log(n / math.pi)


def _prime_power_product(primes, s: int) -> int:
    return int(gmpy2.mpz(math.prod(primes)) ** s)


def _plan_modulus_ok(primes, s: int, n: int) -> bool:
    log_mod = s * sum(math.log(p) for p in primes)
    return log_modulus_clears_genocchi(log_mod, n, lambda: _prime_power_product(primes, s))


def make_batches(primes, r: int, s: int) -> tuple[tuple[int, ...], ...]:
    """Greedy partition in increasing order: at most ``r`` primes, sum at most ``s``."""
    batches, cur = [], []
    for p in sorted(primes):
        if p > s:
            raise ValueError(f"prime {p} exceeds s={s}; no valid batch")
        if cur and (len(cur) >= r or sum(cur) + p > s):
            batches.append(tuple(cur))
            cur = []
        cur.append(p)
    if cur:
        batches.append(tuple(cur))
    return tuple(batches)


def plan(n: int, alpha: AlphaLike = Fraction(1, 3)) -> PlanParams:
    a = normalize_alpha(alpha)
    if n < SMALL_N:
        raise ValueError(f"n={n} is below the planning threshold {SMALL_N}; use the oracle")
    N = _floor_formula(n, a, 1, a, 1 - a)
    s = _floor_formula(n, a, 2, 1 - a, a)
    r = max(1, _floor_formula(n, a, 2, 1 - 2 * a, 2 * a - 1))

    primes = sieve_odd_primes(N).primes
    while not _plan_modulus_ok(primes, s, n):
        N = max(N + 1, N * 11 // 10)
        primes = sieve_odd_primes(N).primes
    if not n > s >= N >= 4:
        raise ValueError(f"degenerate plan for n={n}: need n > s >= N >= 4, got s={s}, N={N}")
    return PlanParams(n, a, N, s, r, make_batches(primes, r, s), modulus_bits(n, N, s), _margin(n, s, primes))


def vsc_denominator(n: int) -> int:
    """Product of the primes ``p`` with ``(p - 1) | n``."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    d, divisors = 1, []
    while d * d <= n:
        if n % d == 0:
            divisors += [d, n // d]
        d += 1
    return math.prod(q + 1 for q in set(divisors) if _is_prime(q + 1))


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % q for q in range(2, math.isqrt(m) + 1))


def to_bernoulli(G: int, n: int) -> Fraction:
    """``B_n = G_n / (2 (1 - 2^n))``, checked against the von Staudt-Clausen denominator."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    B = Fraction(G, 2 * (1 - 2**n))
    if B.denominator != vsc_denominator(n):
        raise IntegrityError(f"denominator of B_{n} is {B.denominator}, expected {vsc_denominator(n)}")
    return B


def genocchi_from_plan(
    params: PlanParams, threads: int = 1, options: EngineOptions | None = None, strict: bool = True
) -> tuple[int, RunReport]:
    """Run every batch of ``params`` and lift the combined residue to ``G_n``."""
    report = RunReport(params)
    n, s = params.n, params.s
    options = options or EngineOptions()

    t0 = time.perf_counter()
    fc = f_coefficients(n, s)
    spf = smallest_prime_factor_table(max(params.N, 2))
    t1 = time.perf_counter()

    def work(P):
        return genocchi_mod_batch(BatchInput(n, s, params.N, P, options), fc, spf, strict)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            outs = list(pool.map(work, params.batches))
    else:
        outs = [work(P) for P in params.batches]
    t2 = time.perf_counter()

    residues = [out.residues[p] for out in outs for p in sorted(out.residues)]
    value, modulus = crt_combine(residues)
    if not genocchi_bound_exceeded_by(modulus, n):
        raise IntegrityError(f"CRT modulus too small to determine G_{n}")
    G = signed_lift(value, modulus)
    t3 = time.perf_counter()

    report.timings_ms.update(coefficients=(t1 - t0) * 1e3, engine=(t2 - t1) * 1e3, crt=(t3 - t2) * 1e3)
    # sequential runs reuse one batch workspace; parallel ones hold `threads` at once
    widest = sorted((o.workspace_bits for o in outs), reverse=True)
    report.peak_workspace_bits = sum(widest[: max(1, threads)])
    for o in outs:
        report.max_abs_f.update(o.max_abs_f)
    return G, report


def compute_genocchi(
    n: int, alpha: AlphaLike = Fraction(1, 3), threads: int = 1, options: EngineOptions | None = None
) -> tuple[int, RunReport]:
    """``G_n`` for even ``n`` plus timing details; small ``n`` go to the oracle."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    a = normalize_alpha(alpha)
    if n < SMALL_N:
        t0 = time.perf_counter()
        G = oracle.genocchi_exact_small(n)
        return G, RunReport(None, {"oracle": (time.perf_counter() - t0) * 1e3})
    t0 = time.perf_counter()
    params = plan(n, a)
    t_plan = (time.perf_counter() - t0) * 1e3
    G, report = genocchi_from_plan(params, threads, options)
    report.timings_ms = {"plan": t_plan, **report.timings_ms}
    return G, report


def genocchi_number(n: int, alpha: AlphaLike = Fraction(1, 3), threads: int = 1) -> int:
    return compute_genocchi(n, alpha, threads)[0]


def bernoulli(n: int, alpha: AlphaLike = Fraction(1, 3), threads: int = 1) -> Fraction:
    """Exact ``B_n`` (with ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    normalize_alpha(alpha)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return to_bernoulli(genocchi_number(n, alpha, threads), n)
