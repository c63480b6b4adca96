"""Reduced-size invariant checks, run by ``fastbern selftest``."""

from __future__ import annotations

import random
import sys

from . import oracle
from .engine import BatchInput, genocchi_mod, genocchi_mod_batch
from .polyeval import DensePoly2M, horner_eval, multipoint_eval
from .scheduler import bernoulli, vsc_denominator


def _congruence(rng):
    for n in range(4, 61, 2):
        s = rng.randint(1, min(8, n - 1))
        p = rng.choice((3, 5, 7, 11, 13))
        want = oracle.genocchi_exact_small(n) % p**s
        if oracle.congruence_direct(n, s, p).value != want:
            return f"congruence n={n} s={s} p={p}"


def _engine(rng):
    for _ in range(10):
        n = rng.randrange(12, 200, 2)
        s = rng.randint(4, min(12, n - 1))
        P = sorted(rng.sample([q for q in (3, 5, 7, 11) if q <= s], 1))
        out = genocchi_mod_batch(BatchInput(n, s, 12, tuple(P)))
        for p in P:
            if out.residues[p].value != oracle.congruence_direct(n, s, p).value:
                return f"engine n={n} s={s} p={p}"
    if genocchi_mod(10, 5, 2).value != 20:
        return "gmod n=10 p=5 s=2"


def _multipoint(rng):
    for _ in range(20):
        M = rng.randint(1, 300)
        F = DensePoly2M(M, [rng.getrandbits(M) for _ in range(rng.randint(0, 80))])
        pts = [rng.getrandbits(M) for _ in range(rng.randint(1, 60))]
        if multipoint_eval(F, pts) != [horner_eval(F, x) for x in pts]:
            return f"multipoint M={M} deg={F.degree}"


def _end_to_end(rng):
    for n in (256, 300):
        for a in ("1/3", "1/2"):
            B = bernoulli(n, a)
            if B != oracle.bernoulli_exact_small(n) or B.denominator != vsc_denominator(n):
                return f"bernoulli n={n} alpha={a}"


CHECKS = (
    ("congruence", _congruence),
    ("engine", _engine),
    ("multipoint", _multipoint),
    ("end-to-end", _end_to_end),
)


def run_selftest(seed: int = 1, out=sys.stdout) -> bool:
    rng = random.Random(seed)
    ok = True
    for name, check in CHECKS:
        failure = check(rng)
        print(f"{'FAIL' if failure else 'ok  '} {name}{': ' + failure if failure else ''}", file=out)
        ok = ok and failure is None
    return ok
