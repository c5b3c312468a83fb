"""Per-phase invariant monitor over cycle-free instances of the random family."""

import argparse

from snakes_sp.experiments import PhaseMonitor, negative_cycle_free, sweep
from snakes_sp.snakes import ReweightState, run_snakes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=1000)
    ap.add_argument("--variant", choices=["basic", "improved"], default="basic")
    args = ap.parse_args()

    done = violations = checks = skips = 0
    for inst in sweep(100_000):
        if done == args.instances:
            break
        if not negative_cycle_free(inst.graph):
            continue
        mon = PhaseMonitor()
        assert run_snakes(ReweightState.start(inst.graph, variant=args.variant, observer=mon)) is None
        for v in mon.violations:
            print(f"{inst.name}: {v}")
        violations += len(mon.violations)
        checks += mon.snake_checks
        skips += mon.snake_skips
        done += 1
    print(f"{done} instances, {violations} violations, {checks} snake checks, {skips} skipped (zero cycles)")
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
