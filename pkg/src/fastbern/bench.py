"""Wall-time and workspace measurements for the scaling and space checks.

Every measurement runs in a fresh interpreter so that peak RSS belongs to
one computation only.

    python -m fastbern.bench scaling --exps 14 15 16 17 --alpha 1/3
    python -m fastbern.bench tradeoff --n 131072
"""

from __future__ import annotations

import argparse
import json
import math
import os
import subprocess
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class Measurement:
    n: int
    alpha: str
    wall_s: float
    peak_rss_bytes: int
    workspace_bytes: int
    batches: int
    s: int
    M: int


def _measure_here(n: int, alpha: str) -> Measurement:
    import resource

    from .scheduler import compute_genocchi, to_bernoulli

    t0 = time.perf_counter()
    G, report = compute_genocchi(n, alpha)
    to_bernoulli(G, n)
    wall = time.perf_counter() - t0
    # ru_maxrss is in kilobytes on Linux
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    p = report.plan
    return Measurement(n, alpha, wall, rss, (report.peak_workspace_bits + 7) // 8, len(p.batches), p.s, p.M)


def measure(n: int, alpha: str = "1/3", timeout: float | None = None) -> Measurement:
    """Compute ``B_n`` in a subprocess and return its time and memory use."""
    cmd = [sys.executable, "-m", "fastbern.bench", "one", "--n", str(n), "--alpha", alpha]
    # a fixed glibc mmap threshold returns large Kronecker buffers to the OS
    # on free instead of letting the heap high-water mark drift upwards
    env = {**os.environ, "MALLOC_MMAP_THRESHOLD_": str(1 << 20)}
    out = subprocess.run(cmd, capture_output=True, text=True, check=True, timeout=timeout, env=env)
    return Measurement(**json.loads(out.stdout.strip().splitlines()[-1]))


def fit_exponent(ns, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(times, float)), 1)
    return float(slope)


def doubling_exponents(ns, times) -> list[float]:
    return [math.log(t1 / t0) / math.log(n1 / n0) for n0, n1, t0, t1 in zip(ns, ns[1:], times, times[1:])]


def scaling(exps=(14, 15, 16, 17), alpha: str = "1/3", repeat: int = 1, log=None) -> dict:
    """Time ``B_(2^e)`` for each ``e``; with ``repeat > 1`` the fastest run counts."""
    rows = []
    for e in exps:
        m = min((measure(2**e, alpha) for _ in range(repeat)), key=lambda r: r.wall_s)
        rows.append(m)
        if log:
            print(f"n=2^{e}: {m.wall_s:.2f} s, rss {m.peak_rss_bytes / 2**20:.0f} MiB", file=log, flush=True)
    ns, ts = [m.n for m in rows], [m.wall_s for m in rows]
    return {
        "alpha": alpha,
        "repeat": repeat,
        "runs": [asdict(m) for m in rows],
        "exponent": fit_exponent(ns, ts) if len(rows) > 1 else None,
        "doubling": doubling_exponents(ns, ts),
    }


def tradeoff(n: int = 2**17, alphas=("1/2", "1/3"), log=None) -> dict:
    rows = {}
    for a in alphas:
        m = measure(n, a)
        rows[a] = asdict(m)
        if log:
            print(f"alpha={a}: workspace {m.workspace_bytes / 2**20:.1f} MiB, rss {m.peak_rss_bytes / 2**20:.0f} MiB, "
                  f"{m.wall_s:.1f} s", file=log, flush=True)
    return {"n": n, "runs": rows}


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(prog="python -m fastbern.bench")
    sub = ap.add_subparsers(dest="cmd", required=True)
    one = sub.add_parser("one")
    one.add_argument("--n", type=int, required=True)
    one.add_argument("--alpha", default="1/3")
    sc = sub.add_parser("scaling")
    sc.add_argument("--exps", type=int, nargs="+", default=[14, 15, 16, 17])
    sc.add_argument("--alpha", default="1/3")
    sc.add_argument("--repeat", type=int, default=1, help="runs per size; the fastest is kept")
    tr = sub.add_parser("tradeoff")
    tr.add_argument("--n", type=int, default=2**17)
    for p in (sc, tr):
        p.add_argument("--out", help="also write the JSON result here")
    args = ap.parse_args(argv)

    if args.cmd == "one":
        print(json.dumps(asdict(_measure_here(args.n, args.alpha))))
        return
    if args.cmd == "scaling":
        res = scaling(args.exps, args.alpha, args.repeat, log=sys.stderr)
    else:
        res = tradeoff(args.n, log=sys.stderr)
    text = json.dumps(res, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
