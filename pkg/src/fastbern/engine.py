"""G_n modulo p^s for a batch of small odd primes, sharing one evaluation.

For each prime ``p`` in the batch,

    G_n = sum_{0 <= j < p} (-1)^j j^(n-s) F_p(j)   (mod p^s),

with ``F_p(j) = p^(s-1) F(j/p)``. All the values ``F(j/p)`` are obtained
from a single multipoint evaluation of ``F`` over ``Z/2^M Z``, where ``M``
is large enough that the centred lift of ``p^(s-1) F(j/p)`` is the exact
integer ``F_p(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log2
from typing import Mapping, Sequence

import gmpy2
from gmpy2 import mpz

from .bounds import PI_LO, ceil_log2
from .genocchi import FCoefficients, f_coefficients, reduce_coefficients
from .modring import PrimePowerResidue, inv_mod_pow2, pow_mod, signed_lift
from .polyeval import DensePoly2M, multipoint_eval
from .primes import SpfTable, smallest_prime_factor_table


@dataclass(frozen=True)
class EngineOptions:
    """``use_symmetry`` pairs ``j`` with ``p - j`` (even ``n`` only) and
    halves the evaluation points. ``use_parity`` evaluates only the odd-index
    part of ``F`` at the squared points, since the even-index coefficients
    past the first vanish. ``factor_powering`` builds ``j^(n-s)`` from the
    powers of the prime factors of ``j``."""

    use_symmetry: bool = True
    factor_powering: bool = True
    use_parity: bool = True


@dataclass(frozen=True)
class BatchInput:
    n: int
    s: int
    N: int
    P: tuple[int, ...]
    options: EngineOptions = field(default_factory=EngineOptions)

    def validate(self, strict: bool = True) -> None:
        n, s, N = self.n, self.s, self.N
        if not n > s >= 4:
            raise ValueError(f"need n > s >= 4, got n={n}, s={s}")
        if N > n:
            raise ValueError(f"prime bound N={N} exceeds n={n}")
        if len(set(self.P)) != len(self.P):
            raise ValueError("primes in a batch must be distinct")
        for p in self.P:
            if not (3 <= p < N and gmpy2.is_prime(p)):
                raise ValueError(f"{p} is not an odd prime below N={N}")
        if strict and sum(self.P) > s:
            raise ValueError(f"batch sum {sum(self.P)} exceeds s={s}")


@dataclass
class BatchOutput:
    residues: dict[int, PrimePowerResidue]
    M: int = 0
    points: int = 0
    workspace_bits: int = 0
    max_abs_f: dict[int, int] = field(default_factory=dict)


def modulus_bits(n: int, N: int, s: int) -> int:
    """``ceil(log2(3 (nN/pi)^(s+1))) + 1``, never rounded below the true value."""
    if not (n >= s >= 4 and 1 <= N <= n):
        raise ValueError(f"need n >= s >= 4 and N <= n, got n={n}, N={N}, s={s}")
    e = s + 1
    num = 3 * mpz(n * N) ** e * mpz(PI_LO.denominator) ** e
    den = mpz(PI_LO.numerator) ** e
    return ceil_log2(int(num), int(den)) + 1


def eval_points(P: Sequence[int], M: int, use_symmetry: bool = False) -> list[tuple[int, int, int]]:
    """``(p, j, j/p mod 2^M)`` for ``1 <= j < p`` (``j <= (p-1)/2`` with symmetry).

    ``j = 0`` is skipped: its term carries ``0^(n-s) = 0``.
    """
    out = []
    for p in P:
        inv = mpz(inv_mod_pow2(p, M))
        top = (p - 1) // 2 if use_symmetry else p - 1
        out.extend((p, j, int(gmpy2.f_mod_2exp(j * inv, M))) for j in range(1, top + 1))
    return out


def recover_f_values(
    evals: Mapping[tuple[int, int], int], P: Sequence[int], s: int, M: int
) -> dict[tuple[int, int], int]:
    """Exact ``F_p(j)`` from ``F(j/p) mod 2^M``: scale by ``p^(s-1)`` and lift."""
    modulus = mpz(1) << M
    scale = {p: gmpy2.powmod(p, s - 1, modulus) for p in P}
    return {
        (p, j): signed_lift(int(gmpy2.f_mod_2exp(v * scale[p], M)), int(modulus))
        for (p, j), v in evals.items()
    }


def power_table(
    p: int, s: int, e: int, spf: SpfTable | None = None, upto: int | None = None, factor_powering: bool = True
) -> list[int]:
    """``t[j] = j^e mod p^s`` for ``0 <= j <= upto`` (default ``p - 1``).

    With ``factor_powering`` only prime ``j`` are powered directly; a composite
    ``j = q*m`` with ``q`` its least prime factor takes ``t[q] * t[m]``.
    """
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    upto = p - 1 if upto is None else upto
    mod = mpz(p) ** s
    t = [mpz(0)] * (upto + 1)
    if upto >= 1:
        t[1] = mpz(1)
    if factor_powering and spf is None:
        spf = smallest_prime_factor_table(max(upto + 1, 2))
    for j in range(2, upto + 1):
        if factor_powering and spf[j] != j:
            q = spf[j]
            t[j] = t[q] * t[j // q] % mod
        else:
            t[j] = gmpy2.powmod(j, e, mod)
    return [int(v) for v in t]


def alternating_sum(
    n: int, p: int, s: int, fvals: Mapping[int, int], powers: Sequence[int], use_symmetry: bool = False
) -> PrimePowerResidue:
    """Residue of ``sum_j (-1)^j j^(n-s) F_p(j)`` modulo ``p^s``.

    With ``use_symmetry`` the sum runs over ``1 <= j <= (p-1)/2`` and is
    doubled; this needs ``n`` even. ``fvals`` maps ``j`` to ``F_p(j)``.
    """
    if use_symmetry and n % 2:
        raise ValueError("symmetric summation needs even n")
    mod = mpz(p) ** s
    top = (p - 1) // 2 if use_symmetry else p - 1
    acc = mpz(0)
    for j in range(1, top + 1):
        term = powers[j] * (mpz(fvals[j]) % mod)
        acc += -term if j % 2 else term
    if use_symmetry:
        acc *= 2
    return PrimePowerResidue(p, s, int(acc % mod))


def _odd_part(fc: FCoefficients, M: int) -> tuple[DensePoly2M, int]:
    # F(x) = c_0 x^(s-1) + x^eps H(x^2): the c_k for even k >= 2 vanish, and
    # the odd-k exponents s-1-k all share the parity eps of s.
    s, c = fc.s, fc.exact
    eps = s % 2
    h = [0] * ((s - 1 - eps) // 2 + 1) if s > 1 else []
    for k in range(1, s, 2):
        h[(s - 1 - k - eps) // 2] = c[k]
    return DensePoly2M(M, tuple(h)), eps


def _workspace_bits(M: int, coeff_count: int, t: int) -> int:
    # subproduct tree (about t coefficients per level) plus the reduced
    # polynomial plus one Kronecker product of slot width 2M
    levels = ceil(log2(t)) + 1 if t > 1 else 1
    return M * (t * levels + coeff_count) + (coeff_count + t) * (2 * M + 64)


def _run(batch: BatchInput, fc: FCoefficients, M: int, spf: SpfTable | None) -> BatchOutput:
    n, s, P, opt = batch.n, batch.s, batch.P, batch.options
    if (fc.n, fc.s) != (n, s):
        raise ValueError(f"coefficients are for (n, s)=({fc.n}, {fc.s}), batch has ({n}, {s})")
    if not P:
        return BatchOutput({}, M)
    symmetric = opt.use_symmetry and n % 2 == 0
    pts = eval_points(P, M, symmetric)
    xs = [x for _, _, x in pts]

    if opt.use_parity:
        H, eps = _odd_part(fc, M)
        sq = [int(gmpy2.f_mod_2exp(mpz(x) * x, M)) for x in xs]
        hv = multipoint_eval(H, sq)
        raw = [int(gmpy2.f_mod_2exp(mpz(x) * v, M)) if eps else v for x, v in zip(xs, hv)]
        ncoef = len(H.coeffs)
    else:
        Fm = reduce_coefficients(fc, M)
        raw = multipoint_eval(Fm, xs)
        ncoef = len(Fm.coeffs)

    fvals = recover_f_values({(p, j): v for (p, j, _), v in zip(pts, raw)}, P, s, M)
    if opt.use_parity:
        c0 = fc.exact[0]
        fvals = {(p, j): v + c0 * j ** (s - 1) for (p, j), v in fvals.items()}

    if opt.factor_powering and (spf is None or spf.limit < max(P)):
        spf = smallest_prime_factor_table(max(P))
    residues, max_f = {}, {}
    for p in P:
        per_p = {j: v for (q, j), v in fvals.items() if q == p}
        top = (p - 1) // 2 if symmetric else p - 1
        powers = power_table(p, s, n - s, spf, top, opt.factor_powering)
        residues[p] = alternating_sum(n, p, s, per_p, powers, symmetric)
        max_f[p] = max(abs(v) for v in per_p.values())
    return BatchOutput(residues, M, len(xs), _workspace_bits(M, ncoef, len(xs)), max_f)


def genocchi_mod_batch(
    batch: BatchInput, fc: FCoefficients | None = None, spf: SpfTable | None = None, strict: bool = True
) -> BatchOutput:
    """``G_n mod p^s`` for every ``p`` in the batch from one shared evaluation.

    ``strict=False`` drops the ``sum(P) <= s`` cost condition; correctness
    does not depend on it.
    """
    batch.validate(strict)
    if fc is None:
        fc = f_coefficients(batch.n, batch.s)
    return _run(batch, fc, modulus_bits(batch.n, batch.N, batch.s), spf)


def genocchi_mod(n: int, p: int, s: int, options: EngineOptions | None = None) -> PrimePowerResidue:
    """Single residue ``G_n mod p^s`` through the fast path, for any ``n > s >= 1``.

    The modulus is sized from the exact coefficient sum instead of the
    asymptotic bound, so small ``s`` and large ``p`` are fine.
    """
    if not n > s >= 1:
        raise ValueError(f"need n > s >= 1, got n={n}, s={s}")
    if not (p >= 3 and gmpy2.is_prime(p)):
        raise ValueError(f"{p} is not an odd prime")
    options = options or EngineOptions()
    fc = f_coefficients(n, s)
    # |F_p(j)| <= p^(s-1) * sum |c_k| for j < p
    M = (p ** (s - 1) * sum(abs(c) for c in fc.exact)).bit_length() + 2
    batch = BatchInput(n, s, p + 1, (p,), options)
    return _run(batch, fc, M, None).residues[p]
