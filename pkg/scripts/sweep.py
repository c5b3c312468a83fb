"""Differential sweep over the seeded random family, with iteration-bound tallies.

    python3 scripts/sweep.py --count 10000 --corpus counterexamples/
"""

import argparse
import time
from collections import Counter

from snakes_sp.classic import bellman_ford
from snakes_sp.experiments import negative_cycle_free, sweep
from snakes_sp.snakes import iteration_bound
from snakes_sp.solver import SolveConfig, differential_check, reweight
from snakes_sp.graph import NegativeCycleCertificate

CONFIGS = [SolveConfig(variant=v, heap=h) for v in ("basic", "improved") for h in ("binary", "pairing")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--corpus", help="where mismatching instances are written")
    args = ap.parse_args()

    t0 = time.perf_counter()
    mismatches = 0
    verdicts = Counter()
    worst = {"basic": 0.0, "improved": 0.0}
    for inst in sweep(args.count, args.start):
        g, s = inst.graph, inst.source
        oracle = bellman_ford(g, s)
        verdicts["cycle" if oracle.has_cycle else "paths"] += 1
        for cfg in CONFIGS:
            result = differential_check(g, s, cfg, args.corpus, inst.name, oracle=oracle)
            if not result:
                mismatches += 1
                print(f"MISMATCH {inst.name} {cfg.variant}/{cfg.heap}: {result.reason}")
        if negative_cycle_free(g):
            verdicts["cycle-free"] += 1
            for variant in worst:
                art = reweight(g, SolveConfig(variant=variant))
                assert not isinstance(art, NegativeCycleCertificate)
                ratio = art.iterations / iteration_bound(g.n, variant, art.c)
                worst[variant] = max(worst[variant], ratio)
    print(f"instances      {args.count} (seeds {args.start}..{args.start + args.count - 1})")
    print(f"verdicts       {dict(verdicts)}")
    print(f"mismatches     {mismatches}")
    print(f"max iters/bound basic {worst['basic']:.3f} improved {worst['improved']:.3f}")
    print(f"elapsed        {time.perf_counter() - t0:.1f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
