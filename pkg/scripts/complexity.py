"""Iteration and relaxation counts on the layered family.

    python3 scripts/complexity.py --ns 1000 10000 100000 --csv layered.csv
"""

import argparse
import csv
import time
from dataclasses import asdict

from snakes_sp.experiments import layered_point, loglog_slope


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[1000, 10_000, 100_000])
    ap.add_argument("--width", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--csv")
    args = ap.parse_args()

    rows = []
    print(f"{'n':>8} {'m':>8} {'variant':>8} {'c':>2} {'iters':>5} {'bound':>5} {'relax/(n-1)m':>12} {'s':>6}")
    for n in args.ns:
        for variant in ("basic", "improved"):
            t0 = time.perf_counter()
            p = layered_point(n // args.width - 1, args.width, args.seed, variant)
            dt = time.perf_counter() - t0
            rows.append({**asdict(p), "seconds": round(dt, 3)})
            print(
                f"{p.n:>8} {p.m:>8} {variant:>8} {p.c:>2} {p.iterations:>5} {p.bound:>5} "
                f"{p.relaxation_ratio:>12.6f} {dt:>6.1f}"
            )
    if len(args.ns) > 1:
        for variant in ("basic", "improved"):
            pts = [r for r in rows if r["variant"] == variant]
            slope = loglog_slope([r["n"] for r in pts], [max(1, r["iterations"]) for r in pts])
            print(f"log-log slope of iterations ({variant}): {slope:.3f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)


if __name__ == "__main__":
    main()
