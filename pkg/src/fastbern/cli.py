"""Command-line interface.

    fastbern compute --n 1000 [--alpha 1/3] [--genocchi] [--format json] [--verify]
    fastbern plan --n 100000 --alpha 1/2
    fastbern gmod --n 10 --p 5 --s 2 [--naive]
    fastbern selftest

Exit status: 0 on success, 1 on argument errors, 2 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import oracle
from .engine import genocchi_mod
from .scheduler import (
    SMALL_N,
    IntegrityError,
    RunReport,
    compute_genocchi,
    normalize_alpha,
    plan,
    to_bernoulli,
)

VERIFY_LIMIT = 4096


class ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def _alpha(text: str) -> Fraction:
    try:
        return normalize_alpha(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _plan_record(report: RunReport | None) -> dict | None:
    if report is None or report.plan is None:
        return None
    p = report.plan
    return {
        "N": p.N,
        "s": p.s,
        "r": p.r,
        "batches": len(p.batches),
        "M": p.M,
        "sufficiency_margin": p.sufficiency_margin,
    }


def _compute(args) -> tuple[Fraction, dict]:
    n, alpha = args.n, args.alpha
    if n < 0:
        raise ArgumentError("--n must be nonnegative")
    report = None
    if n % 2 == 0 and n >= 2:
        G, report = compute_genocchi(n, alpha, args.threads)
        t0 = time.perf_counter()
        value = Fraction(G) if args.genocchi else to_bernoulli(G, n)
        report.timings_ms["convert"] = (time.perf_counter() - t0) * 1e3
    else:
        # G_0 = 0, G_1 = 1 and every other odd index vanishes
        B = oracle.bernoulli_exact_small(n) if n <= 1 else Fraction(0)
        value = Fraction(2 * (1 - 2**n)) * B if args.genocchi else B

    record = {
        "n": n,
        "alpha": str(alpha),
        "kind": "genocchi" if args.genocchi else "bernoulli",
        "numerator": value.numerator,
        "denominator": value.denominator,
        "plan": _plan_record(report),
        "timings_ms": dict(report.timings_ms) if report else {},
        "peak_workspace_bytes": (report.peak_workspace_bits + 7) // 8 if report else 0,
    }
    if args.verify:
        if n > VERIFY_LIMIT:
            print(f"warning: --verify skipped, n > {VERIFY_LIMIT}", file=sys.stderr)
        else:
            ref = oracle.bernoulli_exact_small(n)
            if args.genocchi:
                ref = Fraction(oracle.genocchi_exact_small(n)) if n >= 2 else 2 * (1 - 2**n) * ref
            if ref != value:
                raise IntegrityError(f"fast result for n={n} disagrees with the oracle")
            record["verified"] = True
    return value, record


def cmd_compute(args) -> int:
    value, record = _compute(args)
    if args.format == "json":
        print(json.dumps(record))
    else:
        print(_fraction_text(value))
    return 0


def cmd_plan(args) -> int:
    if args.n < SMALL_N:
        raise ArgumentError(f"n below {SMALL_N} is handled by the oracle; no plan")
    p = plan(args.n, args.alpha)
    rec = {
        "n": p.n,
        "alpha": str(p.alpha),
        "N": p.N,
        "s": p.s,
        "r": p.r,
        "batches": [list(b) for b in p.batches],
        "M": p.M,
        "sufficiency_margin": p.sufficiency_margin,
    }
    print(json.dumps(rec))
    return 0


def cmd_gmod(args) -> int:
    if args.naive:
        res = oracle.congruence_direct(args.n, args.s, args.p)
    else:
        res = genocchi_mod(args.n, args.p, args.s)
    print(res.value)
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return 0 if run_selftest() else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fastbern", description="Exact Bernoulli numbers via Genocchi residues.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute B_n (or G_n)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--alpha", type=_alpha, default=Fraction(1, 3))
    c.add_argument("--genocchi", action="store_true", help="print G_n instead of B_n")
    c.add_argument("--format", choices=("fraction", "json"), default="fraction")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--verify", action="store_true", help=f"check against the oracle (n <= {VERIFY_LIMIT})")
    c.set_defaults(func=cmd_compute)

    p = sub.add_parser("plan", help="show the parameter plan")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(1, 3))
    p.set_defaults(func=cmd_plan)

    g = sub.add_parser("gmod", help="one residue G_n mod p^s")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--naive", action="store_true", help="use the direct summation oracle")
    g.set_defaults(func=cmd_gmod)

    t = sub.add_parser("selftest", help="run reduced invariant checks")
    t.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise ArgumentError("--threads must be >= 1")
        return args.func(args)
    except (ArgumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntegrityError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
